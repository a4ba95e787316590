#![no_main]

use libfuzzer_sys::fuzz_target;
use multicut_mimic::netgraph::{parse_graph, write_graph};

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_graph(data) {
        let text = write_graph(&g);
        let h = parse_graph(&text).expect("canonical output parses");
        assert_eq!(write_graph(&h), text);
    }
});
