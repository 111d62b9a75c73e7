#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| refined_artin_fuzz::parse_oracle_fixture(data));
