//! End-to-end acceptance suite: one test per criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperbinary::expansion::{
    binary_expansion, count_expansions, enumerate_expansions, minimal_expansion, stern,
    CountTable, LengthClass,
};
use hyperbinary::graph::{
    build_graph, color_iso, cyclomatic_number, double_plus_one_map, even_split, in_t, long_count,
    long_subgraph, tree_decomposition, HyperGraph,
};
use hyperbinary::rewrite::{
    children, parents, reduce_to_root_random, reduce_to_sink_random, ArcColor,
};
use hyperbinary::verify::oracle_expansions;

fn arcs_of(g: &HyperGraph) -> HashSet<(String, String, ArcColor)> {
    g.arcs
        .iter()
        .map(|a| {
            (
                g.nodes[a.source].to_string(),
                g.nodes[a.target].to_string(),
                a.color,
            )
        })
        .collect()
}

fn arcset(list: &[(&str, &str, ArcColor)]) -> HashSet<(String, String, ArcColor)> {
    list.iter()
        .map(|(s, t, c)| (s.to_string(), t.to_string(), *c))
        .collect()
}

#[test]
fn criterion_01_figure_exactness() {
    use ArcColor::{Double, Single};
    type FigureCase = (u64, Vec<&'static str>, Vec<(&'static str, &'static str, ArcColor)>);
    let cases: Vec<FigureCase> = vec![
        (
            4,
            vec!["12", "20", "100"],
            vec![("12", "20", Double), ("20", "100", Single)],
        ),
        (
            10,
            vec!["122", "202", "210", "1002", "1010"],
            vec![
                ("122", "202", Double),
                ("202", "1002", Single),
                ("202", "210", Single),
                ("1002", "1010", Single),
                ("210", "1010", Single),
            ],
        ),
        (
            12,
            vec!["212", "220", "1012", "1020", "1100"],
            vec![
                ("212", "1012", Single),
                ("212", "220", Double),
                ("1012", "1020", Double),
                ("220", "1020", Single),
                ("1020", "1100", Single),
            ],
        ),
        (
            18,
            vec!["1122", "1202", "2002", "1210", "10002", "2010", "10010"],
            vec![
                ("1122", "1202", Double),
                ("1202", "2002", Double),
                ("1202", "1210", Single),
                ("2002", "10002", Single),
                ("2002", "2010", Single),
                ("1210", "2010", Double),
                ("10002", "10010", Single),
                ("2010", "10010", Single),
            ],
        ),
        (
            20,
            vec![
                "1212", "2012", "1220", "2020", "10012", "10020", "2100", "10100",
            ],
            vec![
                ("1212", "2012", Double),
                ("1212", "1220", Double),
                ("2012", "2020", Double),
                ("1220", "2020", Double),
                ("2012", "10012", Single),
                ("10012", "10020", Double),
                ("2020", "10020", Single),
                ("2020", "2100", Single),
                ("10020", "10100", Single),
                ("2100", "10100", Single),
            ],
        ),
    ];
    for (n, nodes, arcs) in cases {
        let start = Instant::now();
        let g = build_graph(n).unwrap();
        let elapsed = start.elapsed();
        let built: HashSet<String> = g.nodes.iter().map(|e| e.to_string()).collect();
        let expected: HashSet<String> = nodes.iter().map(|s| s.to_string()).collect();
        assert_eq!(built, expected, "A({n}) nodes");
        assert_eq!(arcs_of(&g), arcset(&arcs), "A({n}) arcs");
        assert!(elapsed < Duration::from_millis(1), "A({n}) took {elapsed:?}");
    }
    // bridging colours of A(18) and A(20)
    let s18 = even_split(&build_graph(18).unwrap()).unwrap();
    assert_eq!(s18.bridging.len(), 3);
    assert_eq!(s18.bridge_color, Some(ArcColor::Single));
    let s20 = even_split(&build_graph(20).unwrap()).unwrap();
    assert_eq!(s20.bridging.len(), 3);
    assert_eq!(s20.bridge_color, Some(ArcColor::Double));
    println!("criterion 01 figure-exactness: PASS");
}

#[test]
fn criterion_02_count_identities() {
    let start = Instant::now();
    let mut t = CountTable::new();
    for n in 1..=5000u64 {
        let b = count_expansions(n, &mut t);
        let enumerated = enumerate_expansions(n).unwrap();
        let oracle = oracle_expansions(n, 5000).unwrap();
        assert_eq!(enumerated.len() as u64, b, "n={n}");
        assert_eq!(enumerated, oracle, "n={n}");
    }
    for n in 0..=100_000u64 {
        assert_eq!(count_expansions(n, &mut t), stern(n + 1), "n={n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("criterion 02 count identities: PASS ({elapsed:?})");
}

#[test]
fn criterion_03_cor_co1() {
    let mut t = CountTable::new();
    let singles: Vec<u64> = (1..=1u64 << 14)
        .filter(|&n| count_expansions(n, &mut t) == 1)
        .collect();
    let expected: Vec<u64> = (1..=14).map(|k| (1u64 << k) - 1).collect();
    assert_eq!(singles, expected);
    println!("criterion 03 cor-co1: PASS");
}

#[test]
fn criterion_04_northshield() {
    // diatomic-row symmetry; valid range is 0 ≤ j ≤ 2^(k−1)
    let mut t = CountTable::new();
    for k in 1..=14u32 {
        for j in 0..=(1u64 << (k - 1)) {
            assert_eq!(
                t.count((1u64 << k) - 1 - j),
                t.count((1u64 << (k - 1)) - 1 + j),
                "k={k} j={j}"
            );
        }
    }
    println!("criterion 04 northshield: PASS");
}

#[test]
fn criterion_05_structure_laws() {
    for n in 1..=2000u64 {
        let g = build_graph(n).unwrap();
        for (v, e) in g.nodes.iter().enumerate() {
            let steps = children(e);
            assert_eq!(steps.len(), e.blocks_of_twos(), "outdegree law, {e}");
            assert_eq!(g.outdegree(v), steps.len());
            for s in &steps {
                assert_eq!(s.target.value(), n, "value preservation, {e}");
                assert_eq!(s.target.weight() + 1, s.source.weight(), "weight decrement, {e}");
                assert!(s.source < s.target, "shortlex increase, {e}");
                assert!(
                    parents(&s.target)
                        .iter()
                        .any(|p| p.source == *e && p.color == s.color),
                    "duality, {e}"
                );
            }
            for p in parents(e) {
                assert!(
                    children(&p.source)
                        .iter()
                        .any(|c| c.target == *e && c.color == p.color),
                    "duality (backward), {e}"
                );
            }
        }
    }
    println!("criterion 05 structure laws: PASS");
}

#[test]
fn criterion_06_confluence() {
    for n in 1..=2000u64 {
        let sink = binary_expansion(n);
        let root = minimal_expansion(n);
        let mut rng = ChaCha8Rng::seed_from_u64(n);
        for e in enumerate_expansions(n).unwrap() {
            for _ in 0..8 {
                assert_eq!(reduce_to_sink_random(&e, &mut rng), sink, "n={n} e={e}");
                assert_eq!(reduce_to_root_random(&e, &mut rng), root, "n={n} e={e}");
            }
        }
    }
    println!("criterion 06 confluence: PASS");
}

#[test]
fn criterion_07_tree_theorems() {
    for n in 1..=5000u64 {
        let g = build_graph(n).unwrap();
        let tree = cyclomatic_number(&g) == 0;
        assert_eq!(tree, tree_decomposition(n).is_some(), "thm-t2, n={n}");
        if n % 2 == 0 {
            let m = n / 2;
            let closed = m.is_power_of_two() || (m + 1).is_power_of_two();
            assert_eq!(tree, closed, "thm-t1, n={n}");
        }
    }
    println!("criterion 07 thm-t1/t2: PASS");
}

#[test]
fn criterion_08_s1_equals_t() {
    let a10 = build_graph(10).unwrap();
    let a12 = build_graph(12).unwrap();
    let mut s1 = Vec::new();
    for n in 1..=5000u64 {
        let g = build_graph(n).unwrap();
        if cyclomatic_number(&g) == 1 {
            s1.push(n);
            assert_eq!(g.nodes.len(), 5, "n={n}");
            assert!(color_iso(&g, &a10) || color_iso(&g, &a12), "n={n}");
        }
    }
    let t: Vec<u64> = (1..=5000u64).filter(|&n| in_t(n)).collect();
    assert_eq!(s1, t);
    // T = { 2^ℓ·11 − 1, 2^ℓ·13 − 1 } explicitly
    let mut explicit: Vec<u64> = (0..)
        .map(|l| 11u64 << l)
        .take_while(|&v| v - 1 <= 5000)
        .map(|v| v - 1)
        .chain(
            (0..)
                .map(|l| 13u64 << l)
                .take_while(|&v| v - 1 <= 5000)
                .map(|v| v - 1),
        )
        .collect();
    explicit.sort_unstable();
    assert_eq!(s1, explicit);
    println!("criterion 08 S1 = T: PASS");
}

#[test]
fn criterion_09_doubling_maps() {
    for m in 1..=1000u64 {
        let g = build_graph(m).unwrap();
        double_plus_one_map(&g).unwrap();
        if m >= 2 {
            let g2m = build_graph(2 * m).unwrap();
            let split = even_split(&g2m).unwrap();
            assert_eq!(split.left.len() + split.right.len(), g2m.nodes.len());
            let expected = if m % 2 == 1 { ArcColor::Single } else { ArcColor::Double };
            if let Some(c) = split.bridge_color {
                assert_eq!(c, expected, "m={m}");
            }
        }
    }
    println!("criterion 09 props 10/11/cr: PASS");
}

#[test]
fn criterion_10_long_subgraph() {
    let mut t = CountTable::new();
    for n in 1..=2000u64 {
        if n.is_power_of_two() {
            assert_eq!(long_count(n, &mut t), 1, "n={n}");
            continue;
        }
        let g = build_graph(n).unwrap();
        let ls = long_subgraph(&g).unwrap();
        assert_eq!(ls.nodes.len() as u64, long_count(n, &mut t), "n={n}");
        let structural = g
            .nodes
            .iter()
            .filter(|e| e.length_class().unwrap() == LengthClass::Long)
            .count();
        assert_eq!(structural, ls.nodes.len(), "n={n}");
    }
    println!("criterion 10 prop-p1/cor-c1: PASS");
}

#[test]
fn criterion_11_cor_e14() {
    let mut t = CountTable::new();
    for n in 1..=5000u64 {
        let g = build_graph(n).unwrap();
        let b = count_expansions(n, &mut t);
        let rows = g.rows.len() as u64;
        assert!(b >= rows, "n={n}");
        assert_eq!(b == rows, tree_decomposition(n).is_some(), "n={n}");
    }
    println!("criterion 11 cor-e14: PASS");
}

#[test]
fn criterion_12_verify_all_cli() {
    let start = Instant::now();
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_hyperbinary"))
        .args(["verify", "all"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        output.status.success(),
        "verify all failed:\n{stdout}\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert_eq!(stdout.lines().count(), 21);
    assert!(stdout.lines().all(|l| l.contains("PASS")), "{stdout}");
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("criterion 12 verify-all: PASS ({elapsed:?})");
}
