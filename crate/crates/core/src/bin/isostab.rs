fn main() {
    std::process::exit(isostab::cli::run(std::env::args_os()));
}
