//! Command-line harness for `surfcob`: curve files, relation suites and SVG
//! rendering.

pub mod cli;
pub mod corpus;
pub mod render;
pub mod suites;

pub use cli::cli;
pub use render::{render_svg, RenderOptions};
pub use suites::{run_suite, run_suite_with, CheckResult, SuiteOptions, SuiteReport, SUITES};

/// `x` with 12 significant digits, trailing zeros dropped.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        let s = format!("{:.*}", (11 - e).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (m, ex) = s.split_once('e').unwrap();
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{ex}")
    }
}

/// Rounds every float in a JSON document to 12 significant digits.
pub fn round_json(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Number(n) if n.is_f64() => {
            let x: f64 = sig12(n.as_f64().unwrap()).parse().unwrap();
            if let Some(y) = serde_json::Number::from_f64(x) {
                *n = y;
            }
        }
        serde_json::Value::Array(a) => a.iter_mut().for_each(round_json),
        serde_json::Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-2.5), "-2.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(123456.7890123456), "123456.789012");
        assert_eq!(sig12(1e-9), "1e-9");
        assert_eq!(sig12(2.0f64.powi(60)), "1.15292150461e18");
        assert_eq!(sig12(0.1 + 0.2), "0.3");
    }

    #[test]
    fn json_rounding() {
        let mut v = serde_json::json!({"a": [0.1f64 + 0.2, 3], "b": {"c": 1.0f64 / 3.0}});
        round_json(&mut v);
        assert_eq!(v["a"][0], 0.3);
        assert_eq!(v["a"][1], 3);
        assert_eq!(v["b"]["c"], 0.333333333333);
    }
}
