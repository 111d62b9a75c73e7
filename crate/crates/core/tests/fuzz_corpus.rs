//! Replays the fuzz corpus through the fuzz drivers on stable, then runs a
//! short deterministic mutation pass over the same seeds.

#[path = "../../../fuzz/src/lib.rs"]
mod drivers;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::fs;
use std::path::PathBuf;

type Driver = fn(&[u8]);

const TARGETS: [(&str, Driver); 4] = [
    ("decode_cyclotomic", drivers::decode_cyclotomic),
    ("parse_group_spec", drivers::parse_group_spec),
    ("parse_job", drivers::parse_job),
    ("parse_oracle_fixture", drivers::parse_oracle_fixture),
];

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_seeds_run_clean() {
    for (target, drive) in TARGETS {
        let s = seeds(target);
        assert!(s.len() >= 5, "{target}: only {} seeds", s.len());
        for (_, bytes) in &s {
            drive(bytes);
        }
    }
}

// splice in JSON-ish tokens as well as raw byte flips
const TOKENS: [&str; 14] = ["0", "-1", "1/0", "\"", "[", "]", "{", "}", ",", "99999999999999999999", "2048", "-9223372036854775808", "null", "\"1/3\""];

fn mutate(rng: &mut StdRng, base: &[u8]) -> Vec<u8> {
    let mut v = base.to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let at = if v.is_empty() { 0 } else { rng.gen_range(0..v.len()) };
        match rng.gen_range(0..7) {
            0 if !v.is_empty() => v[at] = rng.gen(),
            1 if !v.is_empty() => {
                let end = (at + rng.gen_range(1..8)).min(v.len());
                v.drain(at..end);
            }
            2 => {
                let t = TOKENS.choose(rng).unwrap();
                v.splice(at..at, t.bytes());
            }
            3 if v.len() > 1 => {
                // replace a digit run with a token
                if v[at].is_ascii_digit() {
                    let end = v[at..].iter().position(|b| !b.is_ascii_digit()).map_or(v.len(), |k| at + k);
                    let t = TOKENS.choose(rng).unwrap();
                    v.splice(at..end, t.bytes());
                }
            }
            _ => {
                // swap one number for another: keeps the JSON well formed
                let starts: Vec<usize> =
                    (0..v.len()).filter(|&i| v[i].is_ascii_digit() && (i == 0 || !v[i - 1].is_ascii_digit())).collect();
                if let Some(&i) = starts.choose(rng) {
                    let end = v[i..].iter().position(|b| !b.is_ascii_digit()).map_or(v.len(), |k| i + k);
                    let n: i64 = rng.gen_range(-2..13);
                    v.splice(i..end, n.to_string().bytes());
                }
            }
        }
    }
    v
}

#[test]
fn mutated_seeds_do_not_panic() {
    let mut rng = StdRng::seed_from_u64(0xf022);
    for (target, drive) in TARGETS {
        let s = seeds(target);
        let scale: usize = std::env::var("FUZZ_ROUNDS_SCALE").ok().and_then(|v| v.parse().ok()).unwrap_or(1);
        let rounds = scale * if target == "parse_job" || target == "parse_oracle_fixture" { 300 } else { 1500 };
        for _ in 0..rounds {
            let (name, base) = s.choose(&mut rng).unwrap();
            let input = mutate(&mut rng, base);
            let result = std::panic::catch_unwind(|| drive(&input));
            assert!(result.is_ok(), "{target} panicked on a mutation of {name}: {:?}", String::from_utf8_lossy(&input));
        }
    }
}
