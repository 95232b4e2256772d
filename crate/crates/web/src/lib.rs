//! Browser bindings. Each export runs the matching command-line
//! invocation with `--format json` and returns its output, so the page
//! shows exactly what the CLI prints.

use wasm_bindgen::prelude::*;

fn call(args: &[String]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["dslice", "--format", "json"].into_iter().map(String::from).chain(args.iter().cloned());
    let code = dslice_cli::run(argv, &mut out, &mut err);
    if code == 0 {
        Ok(String::from_utf8_lossy(&out).into_owned())
    } else {
        Err(String::from_utf8_lossy(&err).trim().to_string())
    }
}

fn args(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

pub fn z_table_json(p: u32, k: Option<u32>, centered: bool) -> Result<String, String> {
    let mut a = args(&["z-table", "--p", &p.to_string()]);
    if let Some(k) = k {
        a.extend(args(&["--k", &k.to_string()]));
    }
    if centered {
        a.push("--centered".into());
    }
    call(&a)
}

pub fn vseq_json(knot: &str, oracle: bool) -> Result<String, String> {
    let mut a = args(&["vseq", "--knot", knot]);
    if oracle {
        a.push("--oracle".into());
    }
    call(&a)
}

/// Copies are capped at 2 in the browser; three copies at p = 13 means
/// four hundred thousand subgroups.
pub fn grs_json(p: u32, copies: u32, lens_sum: bool) -> Result<String, String> {
    if !(1..=2).contains(&copies) {
        return Err("error: copies must be 1 or 2 in the browser demo".into());
    }
    let mut a = args(&["grs", "--p", &p.to_string(), "--copies", &copies.to_string()]);
    if lens_sum {
        a.push("--lens-sum".into());
    }
    call(&a)
}

#[wasm_bindgen]
pub fn z_table(p: u32, k: Option<u32>, centered: bool) -> Result<String, JsValue> {
    z_table_json(p, k, centered).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn vseq(knot: &str, oracle: bool) -> Result<String, JsValue> {
    vseq_json(knot, oracle).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn grs(p: u32, copies: u32, lens_sum: bool) -> Result<String, JsValue> {
    grs_json(p, copies, lens_sum).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn z_table_has_seven_zeros_at_five() {
        let v: Value = serde_json::from_str(&z_table_json(5, Some(1), true).unwrap()).unwrap();
        assert_eq!(v["zero_count"], 7);
        assert_eq!(v["d"]["row_indices"][0], -2);
    }

    #[test]
    fn vseq_reports_method() {
        let v: Value = serde_json::from_str(&vseq_json("torus:2,9", false).unwrap()).unwrap();
        assert_eq!(v["method"], "closed-form");
        assert_eq!(v["values"], serde_json::json!([2, 2, 1, 1]));
        assert!(vseq_json("torus:2,4", false).unwrap_err().contains("gcd"));
    }

    #[test]
    fn grs_bounds_copies() {
        let v: Value = serde_json::from_str(&grs_json(5, 1, false).unwrap()).unwrap();
        assert_eq!(v["value"], "4");
        assert!(grs_json(5, 3, false).is_err());
        assert!(grs_json(9, 1, false).unwrap_err().contains("odd prime"));
    }
}
