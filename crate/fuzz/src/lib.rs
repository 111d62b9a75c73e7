//! Fuzz drivers: each takes raw bytes, decodes them, and pushes whatever
//! decodes through the code that consumes it. Errors are fine; panics,
//! hangs and non-canonical round trips are not.
//!
//! Also compiled into the core crate's corpus replay test.

use refined_artin::conductor::{conductor_with, ConductorOptions};
use refined_artin::format;
use refined_artin::group::build_group;
use refined_artin::oracle::{filtration_from_monogenic, oracle_monogenic_clin};
use refined_artin::ramification::{artin_character, refined_artin};

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

pub fn decode_cyclotomic(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(v) = format::parse_cyclotomic(s) else { return };
    let printed = serde_json::to_string(&v).expect("values always encode");
    assert_eq!(format::parse_cyclotomic(&printed).expect("printed form parses"), v, "round trip of {s}");
    assert_eq!(v.conjugate().conjugate(), v);
    let _ = v.to_rational();
    if !v.is_zero() {
        let inv = v.inverse().expect("nonzero is invertible");
        assert!((&inv * &v).is_rational());
    }
}

pub fn parse_group_spec(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(spec) = format::parse_group_spec(s) else { return };
    let Ok(g) = build_group(&spec) else { return };
    let sizes: usize = (0..g.num_classes()).map(|c| g.class_size(c)).sum();
    assert_eq!(sizes, g.order());
}

pub fn parse_job(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(job) = format::parse_job(s) else { return };
    let _ = job.to_json();
    let Ok(r) = job.ramification() else { return };
    let bar = refined_artin(&r);
    assert_eq!(bar.add(&bar.dual()).expect("same group"), artin_character(&r));
    for name in job.reps.keys() {
        if let Ok(chi) = job.rep(name, r.gamma()) {
            let _ = conductor_with(&r, &chi, ConductorOptions::from(job.options));
        }
    }
}

pub fn parse_oracle_fixture(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(fx) = format::parse_oracle_fixture(s) else { return };
    let Ok(o) = fx.order() else { return };
    let _ = filtration_from_monogenic(&o);
    if let Some(module) = fx.module() {
        let _ = oracle_monogenic_clin(&o, &module);
    } else if o.degree() <= 8 {
        let _ = oracle_monogenic_clin(&o, &o.regular_module());
    }
}
