#![no_main]

use libfuzzer_sys::fuzz_target;
use multicut_mimic::frontend::{parse_requests, write_requests};

fuzz_target!(|data: &str| {
    if let Ok(r) = parse_requests(data) {
        assert_eq!(parse_requests(&write_requests(&r)).unwrap(), r);
    }
});
