use std::io::Write;
use std::process::{Command, Output, Stdio};

use subk_core::enumerate::corpus_lines;
use subk_core::io::{encode_graph6, Record};
use subk_core::{FamilySpec, Graph};

fn subk(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_subk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn subk");
    // Feed stdin from another thread so a full stdout pipe cannot deadlock us.
    let mut pipe = child.stdin.take().unwrap();
    let input = stdin.to_owned();
    let feeder = std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    let out = child.wait_with_output().unwrap();
    feeder.join().unwrap().unwrap();
    out
}

fn records(out: &Output) -> Vec<Record> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("jsonl row"))
        .collect()
}

fn g6(spec: FamilySpec) -> String {
    encode_graph6(&Graph::generate(&spec).unwrap())
}

fn edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        s += &format!("{u} {v}\n");
    }
    s
}

fn corpus(max_n: usize) -> String {
    corpus_lines(1, max_n).join("\n") + "\n"
}

#[test]
fn compute_cycle_rows() {
    let out = subk(&["compute", "--k", "1", "--k", "2"], &(g6(FamilySpec::Cycle(6)) + "\n"));
    assert!(out.status.success());
    let rows = records(&out);
    let subs: Vec<_> = rows.iter().map(|r| (r.k, r.sub_k)).collect();
    assert_eq!(subs, vec![(1, Some(2)), (2, Some(3))]);
    assert!(rows.iter().all(|r| r.gamma_k.is_none()));
}

#[test]
fn compute_star_corona_edge_list() {
    let g = Graph::generate(&FamilySpec::StarCorona(5)).unwrap();
    let out = subk(&["compute", "--format", "edgelist"], &edge_list(&g));
    assert!(out.status.success());
    let r = &records(&out)[0];
    assert_eq!((r.sub_k, r.fink_jacobson), (Some(3), Some(2)));
    assert_eq!(r.stratified.as_deref(), Some("7/3"));
}

#[test]
fn compute_empty_graph() {
    let out = subk(&["compute"], &(encode_graph6(&Graph::empty(4)) + "\n"));
    assert_eq!(records(&out)[0].sub_k, Some(4));
}

#[test]
fn bounds_lists_every_stratum() {
    let g = Graph::generate(&FamilySpec::StarCorona(5)).unwrap();
    let out = subk(&["bounds"], &(encode_graph6(&g) + "\n"));
    let r = &records(&out)[0];
    assert_eq!(r.stratified_by_t.as_deref(), Some("1:7/3 2:7/3"));
}

#[test]
fn exact_examples() {
    let out = subk(&["exact", "--k", "3"], &(g6(FamilySpec::Complete(4)) + "\n"));
    let r = &records(&out)[0];
    assert_eq!((r.sub_k, r.gamma_k, r.equality), (Some(2), Some(3), Some(false)));
    assert_eq!(r.witness.as_deref(), Some("0 1 2"));

    let out = subk(&["exact", "--k", "2"], &(g6(FamilySpec::Cycle(12)) + "\n"));
    assert_eq!(records(&out)[0].equality, Some(true));
}

#[test]
fn exact_respects_lower_bound_on_order_four() {
    let input = corpus_lines(4, 4).join("\n");
    let out = subk(&["exact"], &input);
    assert!(out.status.success());
    let rows = records(&out);
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r.sub_k.unwrap() <= r.gamma_k.unwrap()));
}

#[test]
fn scan_violations_is_empty() {
    let out = subk(&["scan", "--filter", "violations"], &corpus(6));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("graphs 208"), "{summary}");
    assert!(summary.contains("check-failures 0"), "{summary}");
}

#[test]
fn scan_critical_includes_small_examples() {
    let lines = corpus_lines(1, 6);
    let out = subk(&["scan", "--filter", "critical"], &(lines.join("\n") + "\n"));
    let rows = records(&out);
    let line_of = |r: &Record| lines[r.id as usize - 1].as_str();
    let k2 = rows.iter().find(|r| line_of(r) == "A_").expect("K_2 present");
    assert_eq!((k2.ed_critical, k2.ed_vacuous), (Some(true), Some(false)));
    let e2 = rows.iter().find(|r| line_of(r) == "A?").expect("empty pair present");
    assert_eq!((e2.ea_critical, e2.ea_vacuous, e2.ed_vacuous), (Some(true), Some(false), Some(true)));
    assert!(rows.iter().all(|r| !r.violation));
}

#[test]
fn scan_filters_combine() {
    let out = subk(&["scan", "--filter", "critical", "--filter", "equality"], &corpus(5));
    let rows = records(&out);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.equality == Some(true)));
}

#[test]
fn cubic_graphs_have_equality_at_k2() {
    let corpus = Command::new(env!("CARGO_BIN_EXE_subk"))
        .args(["corpus", "--max-n", "8", "--regular", "3"])
        .output()
        .unwrap();
    let text = String::from_utf8(corpus.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    let rows = records(&subk(&["scan", "--k", "2"], &text));
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.equality == Some(true)));
}

#[test]
fn compute_never_calls_the_oracle() {
    let big = g6(FamilySpec::Cycle(200)) + "\n";
    let out = subk(&["compute"], &big);
    assert!(out.status.success());
    assert_eq!(records(&out)[0].sub_k, Some(67));

    let out = subk(&["exact"], &big);
    assert!(!out.status.success());
    let r = &records(&out)[0];
    assert_eq!(r.sub_k, Some(67));
    assert!(r.error.as_deref().unwrap().contains("cap"));

    let out = subk(&["exact", "--oracle-cap", "64"], &(g6(FamilySpec::Cycle(40)) + "\n"));
    assert_eq!(records(&out)[0].gamma_k, Some(14));
    assert!(!subk(&["exact", "--oracle-cap", "65"], "A_\n").status.success());
}

#[test]
fn errors_are_per_record() {
    let out = subk(&["compute"], "A_\nA~\n\nBw\n");
    assert!(!out.status.success());
    let rows = records(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].sub_k, Some(1));
    assert!(rows[1].error.as_deref().unwrap().starts_with("line 2:"));
    assert_eq!((rows[2].id, rows[2].sub_k), (3, Some(1)));

    let out = subk(&["compute", "--format", "edgelist"], "3 2\n0 1\n0 1\n2 1\n1 0\n");
    let rows = records(&out);
    assert!(rows[0].error.as_deref().unwrap().contains("line 3"));
    assert!(!out.status.success());
}

#[test]
fn output_is_ordered_and_deterministic() {
    let input = corpus(8);
    let a = subk(&["compute", "--k", "1", "--k", "3"], &input);
    let b = subk(&["compute", "--k", "1", "--k", "3"], &input);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let ids: Vec<(u64, u64)> = records(&a).iter().map(|r| (r.id, r.k)).collect();
    let expected: Vec<(u64, u64)> = (1..=13598).flat_map(|id| [(id, 1), (id, 3)]).collect();
    assert_eq!(ids, expected);
}

#[test]
fn csv_matches_jsonl() {
    let input = corpus(4);
    let json = records(&subk(&["scan", "--k", "2"], &input));
    let csv_out = subk(&["scan", "--k", "2", "--output", "csv"], &input);
    let from_csv: Vec<Record> = csv::Reader::from_reader(csv_out.stdout.as_slice())
        .deserialize()
        .map(|r| r.unwrap())
        .collect();
    assert_eq!(json, from_csv);
}

#[test]
fn bench_smoke() {
    let out = subk(&["bench", "--bench-sizes", "100000,1000000", "--output", "csv"], "");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("n,k,sub_k,seconds"));
}

#[test]
fn rejects_k_zero() {
    assert!(!subk(&["compute", "--k", "0"], "A_\n").status.success());
}
