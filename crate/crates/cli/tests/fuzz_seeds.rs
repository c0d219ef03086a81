//! Replays the fuzz corpus seeds on stable.

use std::fs;
use std::path::Path;

use pentagonal_cli::{parse_args, parse_complex};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files.iter().map(|p| fs::read(p).unwrap()).collect()
}

#[test]
fn parse_complex_seeds() {
    let data = seeds("parse_complex");
    assert!(!data.is_empty());
    let accepted = data
        .iter()
        .filter_map(|d| std::str::from_utf8(d).ok())
        .filter(|t| parse_complex(t).is_ok())
        .count();
    assert_eq!(accepted, 4);
}

#[test]
fn cli_args_seeds() {
    let data = seeds("cli_args");
    assert!(!data.is_empty());
    for d in data {
        let text = String::from_utf8(d).unwrap();
        let argv = std::iter::once("pentadgf").chain(text.split('\n'));
        assert!(parse_args(argv).is_ok(), "seed {text:?} rejected");
    }
}
