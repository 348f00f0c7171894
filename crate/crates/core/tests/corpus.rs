use std::fs;
use std::path::PathBuf;

use loopstar::{parse_diagram, render_diagram};

fn corpus_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus"].iter().collect()
}

#[test]
fn every_file_parses_and_validates() {
    let mut n = 0;
    for entry in fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "ls") {
            let d = parse_diagram(&fs::read_to_string(&path).unwrap()).unwrap();
            d.validate().unwrap_or_else(|e| panic!("{}: {e:?}", path.display()));
            let again = parse_diagram(&render_diagram(&d)).unwrap();
            assert_eq!(render_diagram(&again), render_diagram(&d));
            n += 1;
        }
    }
    assert!(n >= 5);
}

#[test]
fn six_crossing_golden() {
    let text = fs::read_to_string(corpus_dir().join("six_crossing.ls")).unwrap();
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let d = parse_diagram(&text).unwrap();
    assert_eq!(render_diagram(&d), body);
}
