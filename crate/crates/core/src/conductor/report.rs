use super::{artin_conductor, conductor, is_qp_stable, qp_irreducibles_cyclic, transport_from_cyclic, weil_restriction_check};
use crate::group::{all_subgroups, normal_subgroups, ClassFunction, FiniteGroup, GroupHom, Subgroup};
use crate::numtheory::{is_integer, rat, Rational};
use crate::ramification::{
    artin_character, bar_n, p_average, quotient_data, refined_artin, refined_artin_upper, subgroup_data, RamificationData,
};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Display;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Report the identities that need a genuine extension (quotient,
    /// subgroup, Weil restriction, Hasse–Arf) as advisory rather than binding.
    pub advisory: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub identity: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub binding: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConductorReport {
    pub records: Vec<IdentityRecord>,
}

impl ConductorReport {
    pub fn binding_failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| r.binding && !r.pass)
    }

    pub fn all_binding_pass(&self) -> bool {
        self.binding_failures().next().is_none()
    }

    /// One JSON object per record.
    pub fn json_lines(&self) -> Vec<String> {
        self.records.iter().map(|r| serde_json::to_string(r).expect("plain strings")).collect()
    }

    pub fn summary(&self) -> String {
        let count = |binding: bool, pass: bool| {
            self.records.iter().filter(|r| r.binding == binding && r.pass == pass).count()
        };
        format!(
            "binding: {} passed, {} failed; advisory: {} passed, {} failed",
            count(true, true),
            count(true, false),
            count(false, true),
            count(false, false)
        )
    }
}

fn record<E: Display, F: Display>(
    identity: &str,
    instance: String,
    expected: Result<String, E>,
    computed: Result<String, F>,
    pass: bool,
    binding: bool,
) -> IdentityRecord {
    let show = |r: Result<String, String>| r.unwrap_or_else(|e| format!("error: {e}"));
    IdentityRecord {
        identity: identity.to_string(),
        instance,
        expected: show(expected.map_err(|e| e.to_string())),
        computed: show(computed.map_err(|e| e.to_string())),
        pass,
        binding,
    }
}

fn compare_cf<E: Display, F: Display>(
    identity: &str,
    instance: String,
    expected: Result<ClassFunction, E>,
    computed: Result<ClassFunction, F>,
    binding: bool,
) -> IdentityRecord {
    let pass = matches!((&expected, &computed), (Ok(a), Ok(b)) if a.values() == b.values());
    record(identity, instance, expected.map(|c| c.to_string()), computed.map(|c| c.to_string()), pass, binding)
}

fn compare_rat<E: Display, F: Display>(
    identity: &str,
    instance: String,
    expected: Result<Rational, E>,
    computed: Result<Rational, F>,
    binding: bool,
) -> IdentityRecord {
    let pass = matches!((&expected, &computed), (Ok(a), Ok(b)) if a == b);
    record(identity, instance, expected.map(|c| c.to_string()), computed.map(|c| c.to_string()), pass, binding)
}

type Never = std::convert::Infallible;

/// The relations satisfied by `bar_n(n)` against `bar_n(n·d)`.
pub fn bar_n_battery(n: usize, max_d: usize) -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    let b = bar_n(n);
    let cn = b.group().clone();
    let trivial = ClassFunction::trivial(&cn);
    out.push(compare_rat::<Never, _>(
        "bar-n-trivial-pairing",
        format!("n={n}"),
        Ok(rat(0, 1)),
        b.pair(&trivial).map(|v| v.to_rational().unwrap_or_else(|_| rat(-1, 1))),
        true,
    ));
    out.push(compare_cf::<Never, _>(
        "bar-n-bisection",
        format!("n={n}"),
        Ok(ClassFunction::augmentation(&cn)),
        b.add(&b.dual()),
        true,
    ));
    let chars = crate::group::abelian_irreducibles(&cn).expect("cyclic");
    for (r, chi) in chars.iter().enumerate() {
        let v = b.pair(chi).map_err(|e| e.to_string());
        let v = v.and_then(|c| c.to_rational().map_err(|_| format!("irrational {c}")));
        out.push(compare_rat::<Never, _>("bar-n-pairing", format!("n={n} r={r}"), Ok(rat(r as i64, n as i64)), v, true));
    }
    for d in 1..=max_d {
        let big = bar_n(n * d);
        let cnd = big.group().clone();
        // ζ_{nd}^j ↦ ζ_{nd}^{jd} = ζ_n^j
        let power = GroupHom::new(cnd.clone(), cn.clone(), (0..n * d).map(|j| j % n).collect()).expect("d-th power map");
        out.push(compare_cf::<Never, _>(
            "bar-n-pushforward",
            format!("n={n} d={d}"),
            Ok(b.clone()),
            big.pushforward(&power),
            true,
        ));
        // μ_n ⊂ μ_{nd}: ζ_n^j = ζ_{nd}^{jd}
        let inclusion = GroupHom::new(cn.clone(), cnd, (0..n).map(|j| j * d).collect()).expect("inclusion");
        let expected = b.add(&ClassFunction::regular(&cn).scale(&rat(d as i64 - 1, 2)));
        out.push(compare_cf("bar-n-restriction", format!("n={n} d={d}"), expected, big.restrict(&inclusion), true));
    }
    out
}

fn members(h: &Subgroup) -> String {
    format!("{:?}", h.members())
}

/// Characters used to probe conductors on a group: trivial, regular, the
/// permutation characters `Ind_H 1`, and for cyclic groups the
/// `Q_p`-irreducibles.
fn probe_characters(g: &crate::group::Group, p: u64) -> Vec<(String, ClassFunction)> {
    let mut out = vec![
        ("trivial".to_string(), ClassFunction::trivial(g)),
        ("regular".to_string(), ClassFunction::regular(g)),
    ];
    for h in all_subgroups(g) {
        if h.is_trivial() || h.order() == g.order() {
            continue;
        }
        let (hg, inc) = h.as_group();
        let ind = ClassFunction::trivial(&hg).pushforward(&inc).expect("inclusion");
        out.push((format!("Ind 1 from {}", members(&h)), ind));
    }
    if g.is_cyclic() {
        let chars = qp_irreducibles_cyclic(g.order(), p);
        for (k, chi) in transport_from_cyclic(g, &chars).expect("cyclic").into_iter().enumerate() {
            out.push((format!("Qp-irreducible #{k}"), chi));
        }
    }
    out
}

/// Replays every identity on `r`, its subgroups and its quotients.
pub fn verify_suite(r: &RamificationData, opts: SuiteOptions) -> ConductorReport {
    let realizable = !opts.advisory;
    let gamma = r.gamma().clone();
    type Task<'a> = Box<dyn Fn() -> Vec<IdentityRecord> + Send + Sync + 'a>;
    let mut tasks: Vec<Task> = Vec::new();

    tasks.push(Box::new(|| bar_n_battery(r.n(), 5)));
    tasks.push(Box::new(|| {
        let b = refined_artin(r);
        let ar = artin_character(r);
        vec![
            compare_cf::<Never, _>("bisection", "Γ".into(), Ok(ar), b.add(&b.dual()), true),
            compare_cf::<Never, _>("upper-lower-agreement", "Γ".into(), Ok(b), refined_artin_upper(r), true),
        ]
    }));
    tasks.push(Box::new(|| {
        let expected = r.discriminant_valuation(&Subgroup::trivial(r.gamma())).map(|d| d * rat(1, 2));
        let computed = conductor(r, &ClassFunction::regular(r.gamma()));
        vec![compare_rat("regular-conductor", "r_Γ".into(), expected, computed, true)]
    }));
    tasks.push(Box::new(|| {
        let bar = refined_artin(r);
        let averaged = p_average(&bar, r.p());
        let mut out = Vec::new();
        for (name, chi) in probe_characters(r.gamma(), r.p()) {
            if !is_qp_stable(&chi, r.p()) {
                continue;
            }
            let plain = bar.pair(&chi).map_err(|e| e.to_string());
            let avg = averaged.as_ref().map_err(|e| e.to_string()).and_then(|a| a.pair(&chi).map_err(|e| e.to_string()));
            let pass = matches!((&plain, &avg), (Ok(x), Ok(y)) if x == y);
            let show = |v: Result<crate::cyclotomic::Cyclotomic, String>| v.map(|c| c.to_string());
            out.push(record("averaging-consistency", name.clone(), show(plain), show(avg), pass, true));

            let lhs = conductor(r, &chi).and_then(|a| Ok(a + conductor(r, &chi.dual())?));
            out.push(compare_rat("conductor-bisection", name, artin_conductor(r, &chi), lhs, true));
        }
        out
    }));
    if gamma.is_abelian() {
        tasks.push(Box::new(move || {
            let jumps = r.upper_jumps();
            let pass = jumps.iter().all(is_integer);
            let shown: Vec<String> = jumps.iter().map(ToString::to_string).collect();
            vec![record::<Never, Never>(
                "hasse-arf",
                "upper jumps".into(),
                Ok("integers".into()),
                Ok(format!("[{}]", shown.join(", "))),
                pass,
                realizable,
            )]
        }));
    }
    for n in normal_subgroups(&gamma) {
        tasks.push(Box::new(move || {
            let expected = quotient_data(r, &n).map(|(q, _)| refined_artin(&q));
            let computed = quotient_data(r, &n)
                .map_err(|e| e.to_string())
                .and_then(|(_, proj)| refined_artin(r).pushforward(&proj).map_err(|e| e.to_string()));
            vec![compare_cf("quotient-pushforward", format!("N={}", members(&n)), expected, computed, realizable)]
        }));
    }
    for h in all_subgroups(&gamma) {
        tasks.push(Box::new(move || subgroup_rows(r, &h, realizable)));
    }

    let records = tasks.par_iter().flat_map_iter(|t| t()).collect();
    ConductorReport { records }
}

fn subgroup_rows(r: &RamificationData, h: &Subgroup, realizable: bool) -> Vec<IdentityRecord> {
    let inst = format!("Γ'={}", members(h));
    let mut out = Vec::new();
    let (hg, inc) = h.as_group();

    let induced_trivial = ClassFunction::trivial(&hg).pushforward(&inc).expect("inclusion");
    let pairing = artin_character(r).pair(&induced_trivial).map_err(|e| e.to_string());
    let pairing = pairing.and_then(|v| v.to_rational().map_err(|_| format!("irrational {v}")));
    out.push(compare_rat("conductor-discriminant", inst.clone(), r.discriminant_valuation(h), pairing, true));

    let s = match subgroup_data(r, h) {
        Ok(s) => s,
        Err(e) => {
            out.push(record::<_, Never>("subgroup-restriction", inst, Err(e), Ok(String::new()), false, realizable));
            return out;
        }
    };
    let computed = p_average(&refined_artin(r), r.p()).map_err(|e| e.to_string()).and_then(|b| b.restrict(&s.inclusion).map_err(|e| e.to_string()));
    let expected = (|| -> Result<ClassFunction, String> {
        let local = p_average(&refined_artin(&s.data), r.p()).map_err(|e| e.to_string())?;
        let disc = r.discriminant_valuation(h).map_err(|e| e.to_string())?;
        let reg = ClassFunction::regular(s.data.gamma()).scale(&(disc * rat(1, 2)));
        local.scale(&rat(s.f_mk as i64, 1)).add(&reg).map_err(|e| e.to_string())
    })();
    out.push(compare_cf("subgroup-restriction", inst.clone(), expected, computed, realizable));

    let sub_group: std::sync::Arc<FiniteGroup> = s.data.gamma().clone();
    let mut chars = vec![
        ("trivial".to_string(), ClassFunction::trivial(&sub_group)),
        ("regular".to_string(), ClassFunction::regular(&sub_group)),
    ];
    if sub_group.is_cyclic() {
        let qp = qp_irreducibles_cyclic(sub_group.order(), r.p());
        for (k, chi) in transport_from_cyclic(&sub_group, &qp).expect("cyclic").into_iter().enumerate() {
            chars.push((format!("Qp-irreducible #{k}"), chi));
        }
    }
    for (name, chi) in chars {
        let row = match weil_restriction_check(r, h, &chi) {
            Ok((lhs, rhs)) => compare_rat::<Never, Never>("weil-restriction", format!("{inst} χ={name}"), Ok(rhs), Ok(lhs), realizable),
            Err(e) => record::<_, Never>("weil-restriction", format!("{inst} χ={name}"), Err(e), Ok(String::new()), false, realizable),
        };
        out.push(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramification::{build_ramification, TameCharacter};

    #[test]
    fn battery_passes_for_small_n() {
        for n in 1..=6 {
            let rows = bar_n_battery(n, 3);
            assert!(rows.iter().all(|r| r.pass), "{:?}", rows.iter().find(|r| !r.pass));
        }
    }

    #[test]
    fn suite_on_quad_and_tame() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let quad = build_ramification(&c2, &[vec![0, 1], vec![0, 1], vec![0, 1]], 2, None).unwrap();
        let report = verify_suite(&quad, SuiteOptions::default());
        assert!(report.all_binding_pass(), "{:?}", report.binding_failures().collect::<Vec<_>>());
        assert!(report.records.iter().all(|r| r.pass));

        let c12 = FiniteGroup::cyclic(12).unwrap();
        let t = build_ramification(&c12, &[(0..12).collect()], 7, Some(TameCharacter { generator: 1, exponent: 1 })).unwrap();
        let report = verify_suite(&t, SuiteOptions::default());
        assert!(report.records.iter().all(|r| r.pass), "{:?}", report.records.iter().filter(|r| !r.pass).collect::<Vec<_>>());
        assert_eq!(verify_suite(&t, SuiteOptions::default()), report);
    }
}
