use cyclebook_web::{construct_json, predict_json, verify_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn predict_matches_library() {
    let v = parse(&predict_json(2, 3, 150, 100).unwrap());
    assert_eq!(v["g"], 397);
    assert!(predict_json(2, 3, 150, 99).unwrap_err().contains("odd"));
}

#[test]
fn construct_lays_out_every_vertex() {
    let v = parse(&construct_json(2, 3, 21, 12).unwrap());
    assert_eq!(v["order"], 51);
    assert_eq!(v["spec"]["family"], "GAMMA3_PRIME");
    let pos = v["positions"].as_array().unwrap();
    assert_eq!(pos.len(), 51);
    for p in pos {
        for c in p.as_array().unwrap() {
            let c = c.as_f64().unwrap();
            assert!((0.0..=1.0).contains(&c));
        }
    }
    let edges = v["edges"].as_array().unwrap();
    assert!(edges.iter().all(|e| e[0].as_u64() < e[1].as_u64()));
}

#[test]
fn verify_detects_a_book_below_n() {
    let v = parse(&construct_json(2, 3, 21, 12).unwrap());
    let g6 = v["graph6"].as_str().unwrap();
    assert_eq!(parse(&verify_json(g6, 12, 21, 3).unwrap())["pass"], true);
    let r = parse(&verify_json(g6, 12, 20, 3).unwrap());
    assert_eq!(r["pass"], false);
    assert_eq!(r["book"]["kind"], "BOOK_FOUND");
    assert!(verify_json("not a graph\u{7f}", 12, 21, 3).is_err());
}
