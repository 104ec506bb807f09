#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::discrete::parse_edge_list;

fuzz_target!(|data: &str| {
    if let Ok(list) = parse_edge_list(data) {
        if let Ok(g) = list.to_metric() {
            assert_eq!(g.vertex_count(), list.labels.len());
        }
        let _ = list.to_discrete();
    }
});
