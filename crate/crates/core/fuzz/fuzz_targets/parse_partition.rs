#![no_main]

use excond::io::{parse_partition, write_partition};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (u8, &[u8])| {
    let (n, data) = input;
    if let Ok(blocks) = parse_partition(data, n as usize) {
        assert_eq!(blocks.len(), n as usize);
        assert!(blocks.iter().all(|&b| b <= 1));
        assert_eq!(parse_partition(write_partition(&blocks).as_bytes(), n as usize).unwrap(), blocks);
    }
});
