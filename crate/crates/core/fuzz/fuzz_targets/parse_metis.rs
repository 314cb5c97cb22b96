#![no_main]

use excond::io::{parse_metis, write_metis};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = parse_metis(data) {
        let text = write_metis(&g);
        let again = parse_metis(text.as_bytes()).expect("written graph parses");
        assert_eq!(again.edges(), g.edges());
        assert_eq!(again.edge_weights(), g.edge_weights());
        assert_eq!(again.vertex_weights(), g.vertex_weights());
        assert_eq!(g.total_volume(), 2.0 * g.total_edge_weight());
    }
});
