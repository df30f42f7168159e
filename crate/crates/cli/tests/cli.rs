use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn divgrad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divgrad")).args(args).output().expect("failed to run divgrad")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_matches_fixture() {
    let o = divgrad(&["build", "M2R1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), fs::read_to_string(fixture("m2r1.gda")).unwrap());
}

#[test]
fn build_relabeled_product_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("relabeled.gda");
    let o = divgrad(&[
        "build",
        "M2R1",
        "M2R1",
        "--images",
        "(1,0,1,0) (1,1,1,0) (0,1,0,1) (0,1,1,1)",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(fixture("m2r1_m2r1_relabeled.gda")).unwrap());
}

#[test]
fn build_rejects_complex_pair() {
    let o = divgrad(&["build", "C1", "C1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: unsupported-kind-pair"), "{}", stderr(&o));
}

#[test]
fn build_rejects_non_injective_images() {
    let o = divgrad(&["build", "M2R1", "--images", "(1,0) (1,0)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "), "{}", stderr(&o));
}

#[test]
fn classify_prints_summary_and_record() {
    let o = divgrad(&["classify", path_str(&fixture("m2c2.gda"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let (first, rest) = text.split_once('\n').unwrap();
    assert_eq!(first, "# case 2e, T = Z4, [nu] = +,-");
    assert_eq!(rest, fs::read_to_string(fixture("m2c2.rec")).unwrap());
}

#[test]
fn classify_out_writes_pure_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h1.rec");
    let o = divgrad(&["classify", path_str(&fixture("h1.gda")), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("case 1b"));
    assert_eq!(fs::read_to_string(&out).unwrap(), fs::read_to_string(fixture("h1.rec")).unwrap());
}

#[test]
fn classify_defers_complex_case() {
    let o = divgrad(&["classify", path_str(&fixture("m2r1_c0.gda"))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("deferred yes"));
}

#[test]
fn corrupted_documents_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = fs::read_to_string(fixture("m2r1.gda")).unwrap();

    let syntax = dir.path().join("syntax.gda");
    fs::write(&syntax, good.replace("[ 0, 1 ; 1, 0 ]", "[ 0, 1 ; 1 0 ]")).unwrap();
    let o = divgrad(&["classify", path_str(&syntax)]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));

    let closure = dir.path().join("closure.gda");
    fs::write(&closure, good.replace("[ 0, -1 ; 1, 0 ]", "[ 0, 1 ; 1, 0 ]")).unwrap();
    let o = divgrad(&["classify", path_str(&closure)]);
    assert_eq!(o.status.code(), Some(5), "{}", stderr(&o));

    // A grading whose neutral component is not a division algebra.
    let trivial = dir.path().join("trivial.gda");
    fs::write(
        &trivial,
        "gda 1\nkind R\nn 2\ngroup Z2\nsupport (0)\ncomponent (0):\n[ 1, 0 ; 0, 1 ]\n[ 0, 1 ; 0, 0 ]\n[ 0, 0 ; 1, 0 ]\n[ 1, 0 ; 0, -1 ]\n",
    )
    .unwrap();
    let o = divgrad(&["classify", path_str(&trivial)]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn iso_detects_relabeled_product() {
    let o = divgrad(&["iso", path_str(&fixture("h1_h1.gda")), path_str(&fixture("m2r1_m2r1_relabeled.gda"))]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("yes"), "{}", stdout(&o));
}

#[test]
fn equiv_separates_2d_from_2e() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("e.gda");
    let o = divgrad(&["canonical", "2e", "2", "--out", path_str(&e)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = divgrad(&["equiv", path_str(&fixture("canonical_2d_m2.gda")), path_str(&e)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("no (case 2d vs case 2e)"), "{}", stdout(&o));
}

#[test]
fn equiv_of_two_complex_gradings_is_deferred() {
    let f = fixture("m2r1_c0.gda");
    let o = divgrad(&["equiv", path_str(&f), path_str(&f)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).starts_with("error: "), "{}", stderr(&o));
}

#[test]
fn canonical_and_realize_agree_with_fixtures() {
    let o = divgrad(&["canonical", "3b", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), fs::read_to_string(fixture("canonical_3b_m1.gda")).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("real.gda");
    let o = divgrad(&["realize", path_str(&fixture("canonical_1b_m1.rec")), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = divgrad(&["classify", path_str(&out)]);
    let text = stdout(&o);
    assert_eq!(text.split_once('\n').unwrap().1, fs::read_to_string(fixture("canonical_1b_m1.rec")).unwrap());
}

#[test]
fn refine_produces_one_dimensional_components() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fine.gda");
    let o = divgrad(&["refine", path_str(&fixture("m2c2.gda")), "--out", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = divgrad(&["classify", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("\ndim 1\n"), "{}", stdout(&o));
}

#[test]
fn verify_blocks_passes() {
    let o = divgrad(&["verify", "blocks"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("suite blocks pass"), "{text}");
    assert!(text.ends_with("all suites pass\n"));
}

#[test]
fn verify_rejects_unknown_suite() {
    let o = divgrad(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}
