//! Regenerates the bundled fixture files under `fixtures/` at the
//! workspace root from the in-crate constructors. Run after changing any
//! fixture constructor:
//!
//! ```text
//! cargo run -p fusionkit --example gen_fixtures
//! ```
//!
//! The matrices with exact cyclotomic entries (`printed36.json`,
//! `toric_code.json`) are written in the exact root-of-unity encoding by
//! hand here; everything else serializes through the library writers.

use std::fs;
use std::path::PathBuf;

use serde_json::{json, Value};

use fusionkit::fixtures;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Renders an exact-entry matrix file with one S-row (and the T-diagonal)
/// per line, instead of the fully expanded pretty form.
fn render_exact(root_order: u64, s: &[Vec<Value>], t: &[Value]) -> String {
    let row = |cells: &[Value]| {
        let parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
        format!("    [{}]", parts.join(", "))
    };
    let s_rows: Vec<String> = s.iter().map(|r| row(r)).collect();
    format!(
        "{{\n  \"root_order\": {root_order},\n  \"S\": [\n{}\n  ],\n  \"T\":\n{}\n}}",
        s_rows.join(",\n"),
        row(t),
    )
}

/// The rank-10 S-matrix over ζ₆, entrywise as root sums `[[coeff, exp]]`.
fn printed36() -> String {
    // Shorthands: plain integers n ↦ [[n, 0]], and 2ζ₆^e ↦ [[2, e]].
    let num = |n: i64| json!([[n, 0]]);
    let two_zeta = |e: i64| json!([[2, e.rem_euclid(6)]]);
    let zero = json!([]);
    let (a, b, c, d) = (two_zeta(2), two_zeta(-2), two_zeta(1), two_zeta(-1));
    let s = vec![
        vec![num(1), num(1), num(1), num(3), num(2), num(2), num(2), num(2), num(2), num(2)],
        vec![
            num(1), num(1), num(1), num(3),
            a.clone(), b.clone(), a.clone(), b.clone(), a.clone(), b.clone(),
        ],
        vec![
            num(1), num(1), num(1), num(3),
            b.clone(), a.clone(), b.clone(), a.clone(), b.clone(), a.clone(),
        ],
        vec![
            num(3), num(3), num(3), num(-3),
            zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone(),
        ],
        vec![
            num(2), a.clone(), b.clone(), zero.clone(),
            d.clone(), c.clone(), c.clone(), d.clone(), num(-2), num(-2),
        ],
        vec![
            num(2), b.clone(), a.clone(), zero.clone(),
            c.clone(), d.clone(), d.clone(), c.clone(), num(-2), num(-2),
        ],
        vec![
            num(2), a.clone(), b.clone(), zero.clone(),
            c.clone(), d.clone(), num(-2), num(-2), d.clone(), c.clone(),
        ],
        vec![
            num(2), b.clone(), a.clone(), zero.clone(),
            d.clone(), c.clone(), num(-2), num(-2), c.clone(), d.clone(),
        ],
        vec![
            num(2), a.clone(), b.clone(), zero.clone(),
            num(-2), num(-2), d.clone(), c.clone(), c.clone(), d.clone(),
        ],
        vec![
            num(2), b.clone(), a.clone(), zero.clone(),
            num(-2), num(-2), c.clone(), d.clone(), d.clone(), c.clone(),
        ],
    ];
    let one = json!([[1, 0]]);
    let m_one = json!([[-1, 0]]);
    let t = vec![
        one.clone(), one.clone(), one.clone(), m_one,
        json!([[1, 2]]), json!([[1, 2]]),
        one.clone(), one,
        json!([[1, 4]]), json!([[1, 4]]),
    ];
    render_exact(6, &s, &t)
}

/// The rank-4 all-±1 S-matrix with twists (1,1,1,−1), exactly over ζ₂.
fn toric_code() -> String {
    let p = json!([[1, 0]]);
    let m = json!([[1, 1]]);
    let s = vec![
        vec![p.clone(), p.clone(), p.clone(), p.clone()],
        vec![p.clone(), p.clone(), m.clone(), m.clone()],
        vec![p.clone(), m.clone(), p.clone(), m.clone()],
        vec![p.clone(), m.clone(), m.clone(), p.clone()],
    ];
    let t = vec![p.clone(), p.clone(), p, m];
    render_exact(2, &s, &t)
}

fn main() {
    let dir = fixtures_dir();
    fs::create_dir_all(&dir).expect("create fixtures dir");
    let write = |name: &str, text: String| {
        let mut text = text;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        fs::write(dir.join(name), text).unwrap_or_else(|e| panic!("write {name}: {e}"));
        println!("wrote {name}");
    };

    write("printed36.json", printed36());
    write("toric_code.json", toric_code());
    write("rank10_spec.json", fixtures::rank10_search_spec().to_json());
    write("rank10_ring_i.json", fixtures::rank10_ring_i().to_json());
    write("rank10_ring_ii.json", fixtures::rank10_ring_ii().to_json());
    write("cochain_z3.json", fixtures::rank10_cochain().to_json());
    write("z2.json", fixtures::z2().to_json());
    write("z3.json", fixtures::z3().to_json());
    write("z2z2.json", fixtures::z2z2().to_json());
    write("s3.json", fixtures::s3().to_json());
    write("d4.json", fixtures::d4().to_json());
    write("q8.json", fixtures::q8().to_json());
}
