use std::io::Write;
use std::process::{Command, Output};

const Z4: &str = "{ring:{kind:zmod,n:4},involution:{kind:identity}}";
const SWAP: &str =
    "{ring:{kind:product,left:{kind:zmod,n:2},right:{kind:zmod,n:2}},involution:{kind:swap}}";
const M2Z2: &str = "{ring:{kind:matrix,base:{kind:zmod,n:2},n:2}}";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_starclean"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn classify_prints_a_table() {
    let f = spec_file(Z4);
    let o = run(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ring: Z4 / identity"));
    assert!(out
        .lines()
        .any(|l| l.starts_with("strongly-star-clean") && l.contains("yes")));
    assert!(out
        .lines()
        .any(|l| l.starts_with("regular") && l.contains("no")));
}

#[test]
fn sets_lists_projections() {
    let o = run(&["sets", SWAP, "--kind", "projections", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"elements\":[0,3],\"kind\":\"projections\",\"rendered\":[\"(0,0)\",\"(1,1)\"],\"report\":\"sets\",\"ring\":\"Z2 x Z2 / swap\"}\n"
    );
}

#[test]
fn decompose_machine_output_is_canonical() {
    let o = run(&[
        "--json",
        "decompose",
        Z4,
        "--element",
        "2",
        "--mode",
        "strongly-star-clean",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"element\":2,\"rendered\":[\"2\",\"1\",\"1\"],\"report\":\"witness\",\"ring\":\"Z4 / identity\",\"witness\":{\"exhausted\":false,\"mode\":\"strongly-star-clean\",\"parts\":[1,1]}}\n"
    );
}

#[test]
fn factor_reports_exhausted_search() {
    let o = run(&["factor", M2Z2, "--element", "5", "--mode", "pu"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("element: 5 = [[1,0],[1,0]]"));
    assert!(out.contains("none (search exhausted)"));
}

#[test]
fn verify_claims() {
    let o = run(&["verify", SWAP, "--claim", "ex-swap"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("status: verified"));

    let o = run(&["verify", M2Z2, "--claim", "ex-m2z2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"status\":\"verified\""));

    let o = run(&["verify", Z4, "--claim", "cor-matrix", "--max-order", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ring of order 256 exceeds the size cap of 100"));
}

#[test]
fn input_errors_exit_with_2() {
    let o = run(&["classify", "/nonexistent/ring.spec"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));

    let f = spec_file("{\n  ring: {kind: zmod,, n: 4}\n}");
    let o = run(&["classify", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 21"), "{}", stderr(&o));

    let o = run(&["decompose", Z4, "--element", "9", "--mode", "clean"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('9'));

    let o = run(&[
        "classify",
        "{ring:{kind:product,left:{kind:zmod,n:2},right:{kind:zmod,n:3}},involution:swap}",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not admissible"));

    let o = run(&[
        "classify",
        "{ring:{kind:matrix,base:{kind:zmod,n:2},n:2},involution:identity}",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("(xy)* = y* x*` fails at (1, 2)"),
        "{}",
        stderr(&o)
    );

    let o = run(&["sets", Z4, "--kind", "nilpotents"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_skips_entries_that_fail_to_build() {
    let corpus = spec_file(
        "[\n  {ring: {kind: zmod, n: 3}},\n  {ring: {kind: zmod, n: 3}, involution: {kind: table, star: [0, 2, 1]}},\n]",
    );
    let o = run(&["suite", "--corpus", corpus.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("entry failed to build"), "{out}");
    assert!(out.contains("0 violated"));
}

#[test]
fn empty_corpus_is_an_empty_report() {
    let corpus = spec_file("[]");
    let o = run(&[
        "--json",
        "suite",
        "--corpus",
        corpus.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"cells\":[],\"report\":\"suite\",\"skipped\":0,\"verified\":0,\"violated\":0}\n"
    );
}

#[test]
fn search_finds_the_swap_ring() {
    let o = run(&[
        "search",
        "--stronger",
        "strongly-star-clean",
        "--weaker",
        "strongly-clean",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("\"found\":\"Z2 x Z2 / swap\""),
        "{}",
        stdout(&o)
    );

    let o = run(&[
        "search",
        "--stronger",
        "strongly-clean",
        "--weaker",
        "clean",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("none found"));
}

#[test]
fn sampled_search_is_seeded() {
    let args = [
        "search",
        "--stronger",
        "star-clean",
        "--weaker",
        "clean",
        "--sample",
        "12",
        "--seed",
        "5",
        "--max-order",
        "512",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("\"searched\":12"));
}

#[test]
fn suite_json_is_byte_identical_across_runs_and_threads() {
    let four = run(&["suite", "--json", "--threads", "4"]);
    let again = run(&["suite", "--json", "--threads", "4"]);
    let one = run(&["suite", "--json", "--threads", "1"]);
    assert_eq!(four.status.code(), Some(0));
    assert!(!four.stdout.is_empty());
    assert_eq!(four.stdout, again.stdout);
    assert_eq!(four.stdout, one.stdout);
}

#[test]
fn bundled_specs_classify() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    for name in ["swap.ring", "m2z2.ring", "gf4-frobenius.ring"] {
        let o = run(&["classify", dir.join(name).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
    let o = run(&[
        "suite",
        "--corpus",
        dir.join("small-corpus.ring").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
}
