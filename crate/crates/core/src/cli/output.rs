//! JSON and CSV rendering of reports.

use serde_json::{json, Value};

use crate::numeric::report::{round_sig9, ModulusReport};

/// Number with nine significant digits, as text.
pub fn fmt9(x: f64) -> String {
    let r = round_sig9(x);
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

pub fn report_json(report: &ModulusReport) -> String {
    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
    s.push('\n');
    s
}

pub fn report_csv(report: &ModulusReport) -> String {
    let mut s = String::from("parameter,integral\n");
    let audit = &report.admissibility;
    for (p, v) in audit.parameters.iter().zip(&audit.per_curve_integrals) {
        s.push_str(&format!("{},{}\n", fmt9(*p), fmt9(*v)));
    }
    s
}

pub fn suite_json(suite: &str, seed: u64, reports: &[ModulusReport]) -> String {
    let v = json!({
        "suite": suite,
        "seed": seed,
        "reports": reports.iter().map(ModulusReport::to_json).collect::<Vec<Value>>(),
    });
    let mut s = serde_json::to_string_pretty(&v).expect("suite serializes");
    s.push('\n');
    s
}

pub fn suite_csv(reports: &[ModulusReport]) -> String {
    let mut s = String::from("family,parameter,integral\n");
    for r in reports {
        let audit = &r.admissibility;
        for (p, v) in audit.parameters.iter().zip(&audit.per_curve_integrals) {
            s.push_str(&format!("{},{},{}\n", r.family.name(), fmt9(*p), fmt9(*v)));
        }
    }
    s
}
