//! Report documents: versioned JSON, flat CSV of bound rows, and a plain
//! text table for terminals.

use serde::Serialize;

use crate::error::Result;
use crate::normed_space::Vector;
use crate::verify::BoundCheck;

pub const SCHEMA: &str = "iso-stab-report/1";

#[derive(Debug, Serialize)]
pub struct ReportDocument<'a, T: Serialize> {
    pub schema: &'static str,
    pub kind: &'a str,
    pub passed: bool,
    pub pair_set_hash: Option<&'a str>,
    pub config: &'a serde_json::Value,
    pub report: &'a T,
}

impl<'a, T: Serialize> ReportDocument<'a, T> {
    pub fn new(
        kind: &'a str,
        passed: bool,
        pair_set_hash: Option<&'a str>,
        config: &'a serde_json::Value,
        report: &'a T,
    ) -> Self {
        Self {
            schema: SCHEMA,
            kind,
            passed,
            pair_set_hash,
            config,
            report,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

fn coords(v: &Vector) -> String {
    v.coords()
        .iter()
        .map(|c| format!("{c:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `name,measured,bound,pass,margin,witness_x,witness_y`; witness
/// coordinates are space separated within their field.
pub fn bounds_csv(bounds: &[BoundCheck]) -> String {
    let mut out = String::from("name,measured,bound,pass,margin,witness_x,witness_y\n");
    for b in bounds {
        let (wx, wy) = b
            .witness
            .as_ref()
            .map_or((String::new(), String::new()), |w| {
                (coords(&w.x), coords(&w.y))
            });
        out.push_str(&format!(
            "{},{:?},{:?},{},{:?},{},{}\n",
            b.name, b.measured, b.bound_value, b.pass, b.margin, wx, wy
        ));
    }
    out
}

pub fn bound_table(bounds: &[BoundCheck]) -> String {
    let mut out = format!(
        "{:<26} {:>14} {:>8} {:>14} {:>14}  {}\n",
        "check", "measured", "bound", "bound value", "margin", "status"
    );
    for b in bounds {
        out.push_str(&format!(
            "{:<26} {:>14.6e} {:>8} {:>14.6e} {:>14.6e}  {}\n",
            b.name,
            b.measured,
            b.bound_formula,
            b.bound_value,
            b.margin,
            if b.pass { "PASS" } else { "FAIL" }
        ));
    }
    out
}

/// Lines describing every failed row with its witness pair.
pub fn failure_lines(bounds: &[BoundCheck]) -> Vec<String> {
    bounds
        .iter()
        .filter(|b| !b.pass)
        .map(|b| match &b.witness {
            Some(w) => format!(
                "FAIL {}: {:e} > {} = {:e}; witness x=[{}] y=[{}]",
                b.name,
                b.measured,
                b.bound_formula,
                b.bound_value,
                coords(&w.x),
                coords(&w.y)
            ),
            None => format!(
                "FAIL {}: {:e} > {} = {:e}",
                b.name, b.measured, b.bound_formula, b.bound_value
            ),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normed_space::Tolerance;
    use crate::ortho::OrthoPair;

    fn rows() -> Vec<BoundCheck> {
        let t = Tolerance::default();
        let w = OrthoPair::trivial(Vector::new(vec![1.5, -2.0]).unwrap());
        vec![
            BoundCheck::new("a", 0.5, "eps", 1.0, &t, Some(w)),
            BoundCheck::new("b", 2.0, "2*eps", 1.0, &t, None),
        ]
    }

    #[test]
    fn csv_rows() {
        let csv = bounds_csv(&rows());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "name,measured,bound,pass,margin,witness_x,witness_y"
        );
        assert_eq!(lines[1], "a,0.5,1.0,true,0.5,1.5 -2.0,0.0 0.0");
        assert_eq!(lines[2], "b,2.0,1.0,false,-1.0,,");
    }

    #[test]
    fn failures_and_table() {
        let r = rows();
        let f = failure_lines(&r);
        assert_eq!(f.len(), 1);
        assert!(f[0].starts_with("FAIL b"));
        let table = bound_table(&r);
        assert!(table.contains("PASS") && table.contains("FAIL"));
    }

    #[test]
    fn json_envelope() {
        let cfg = serde_json::json!({"seed": 1});
        let r = rows();
        let doc = ReportDocument::new("test", false, Some("abc"), &cfg, &r);
        let v: serde_json::Value = serde_json::from_str(&doc.to_json().unwrap()).unwrap();
        assert_eq!(v["schema"], "iso-stab-report/1");
        assert_eq!(v["report"][1]["pass"], false);
    }
}
