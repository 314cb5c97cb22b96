//! Replays the checked-in fuzz corpus through the same checks as the fuzz
//! targets.

use std::path::PathBuf;

use excond::io::{parse_metis, parse_partition, write_metis, write_partition};

fn corpus(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap())
        })
        .collect();
    files.sort();
    assert!(!files.is_empty());
    files
}

#[test]
fn metis_seeds() {
    for (name, data) in corpus("parse_metis") {
        let parsed = parse_metis(&data);
        let expect_ok = !["too_few_lines", "asymmetric", "negative_weight"].contains(&name.as_str());
        assert_eq!(parsed.is_ok(), expect_ok, "{name}: {parsed:?}");
        if let Ok(g) = parsed {
            let again = parse_metis(write_metis(&g).as_bytes()).unwrap();
            assert_eq!(again.edges(), g.edges(), "{name}");
            assert_eq!(again.edge_weights(), g.edge_weights(), "{name}");
            assert_eq!(again.vertex_weights(), g.vertex_weights(), "{name}");
        }
    }
}

#[test]
fn partition_seeds() {
    for (name, data) in corpus("parse_partition") {
        let (n, rest) = data.split_first().unwrap();
        let parsed = parse_partition(rest, *n as usize);
        assert_eq!(parsed.is_ok(), name == "c4_header_byte", "{name}: {parsed:?}");
        if let Ok(blocks) = parsed {
            assert_eq!(parse_partition(write_partition(&blocks).as_bytes(), blocks.len()).unwrap(), blocks);
        }
    }
}
