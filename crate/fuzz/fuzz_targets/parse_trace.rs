#![no_main]

use libfuzzer_sys::fuzz_target;
use multicut_mimic::trace::parse_trace;

fuzz_target!(|data: &str| {
    if let Ok(t) = parse_trace(data) {
        // replay must reject bad events without panicking
        let _ = t.replay(&multicut_mimic::netgraph::TerminalNetwork::with_vertices(4));
        assert_eq!(parse_trace(&t.to_text()).unwrap(), t);
    }
});
