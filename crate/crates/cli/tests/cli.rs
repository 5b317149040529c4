use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use schur_core::io::{parse_complex, parse_straightening};
use schur_core::{FreeComplex, Partition, Polynomial, Ring, Tableau};
use serde_json::{json, Value};
use tempfile::TempDir;

fn schurcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurcx")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, value: &Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn koszul_xy() -> Value {
    json!({
        "ring": {"coefficients": "QQ", "variables": ["x", "y"]},
        "min_degree": 0,
        "ranks": [1, 2, 1],
        "differentials": [[["x", "y"]], [["-y"], ["x"]]]
    })
}

fn generic_2x4() -> Value {
    let vars: Vec<String> = (1..=4).flat_map(|j| (1..=2).map(move |i| format!("x{i}{j}"))).collect();
    let rows: Vec<Vec<String>> = (1..=2).map(|i| (1..=4).map(|j| format!("x{i}{j}")).collect()).collect();
    json!({
        "ring": {"coefficients": "QQ", "variables": vars},
        "min_degree": 0,
        "ranks": [2, 4],
        "differentials": [rows]
    })
}

fn example_tableau() -> Value {
    json!({
        "shape": [3, 3, 2],
        "entries": [[1,1,-3],[1,2,-2],[1,3,-2],[2,1,2],[2,2,1],[2,3,3],[3,1,-1],[3,2,3]]
    })
}

#[test]
fn straighten_worked_example() {
    let dir = TempDir::new().unwrap();
    let t = write(&dir, "t.json", &example_tableau());
    let out = dir.path().join("out.json");
    let o = schurcx(&["straighten", "--tableau", p(&t), "--out", p(&out)]);
    assert!(o.status.success());
    let value: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(
        value,
        json!([
            {"coefficient": 1, "tableau": [[1,1,-3],[1,2,-2],[1,3,-2],[2,1,-1],[2,2,1],[2,3,3],[3,1,2],[3,2,3]]},
            {"coefficient": -1, "tableau": [[1,1,-3],[1,2,-2],[1,3,-2],[2,1,-1],[2,2,2],[2,3,3],[3,1,1],[3,2,3]]}
        ])
    );
    let shape = Partition::new(vec![3, 3, 2]).unwrap();
    let parsed = parse_straightening(&fs::read_to_string(&out).unwrap(), &shape).unwrap();
    assert_eq!(parsed.len(), 2);
}

#[test]
fn straighten_trivial_cases() {
    let dir = TempDir::new().unwrap();
    let standard = json!({"shape": [2, 1], "entries": [[1,1,-1],[1,2,1],[2,1,2]]});
    let t = write(&dir, "s.json", &standard);
    let o = schurcx(&["straighten", "--tableau", p(&t)]);
    assert!(o.status.success());
    let value: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(value, json!([{"coefficient": 1, "tableau": [[1,1,-1],[1,2,1],[2,1,2]]}]));

    let repeated = json!({"shape": [2, 2], "entries": [[1,1,1],[1,2,1],[2,1,2],[2,2,3]]});
    let t = write(&dir, "r.json", &repeated);
    let o = schurcx(&["straighten", "--tableau", p(&t)]);
    assert!(o.status.success());
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap(), json!([]));
}

#[test]
fn straighten_error_codes() {
    let dir = TempDir::new().unwrap();
    let garbage = dir.path().join("g.json");
    fs::write(&garbage, "{\"shape\": [1,").unwrap();
    assert_eq!(schurcx(&["straighten", "--tableau", p(&garbage)]).status.code(), Some(2));
    let gap = json!({"shape": [2], "entries": [[1,1,1]]});
    let t = write(&dir, "gap.json", &gap);
    assert_eq!(schurcx(&["straighten", "--tableau", p(&t)]).status.code(), Some(3));
    let mut narrow = example_tableau();
    narrow["n"] = json!(2);
    let t = write(&dir, "narrow.json", &narrow);
    assert_eq!(schurcx(&["straighten", "--tableau", p(&t)]).status.code(), Some(3));
}

#[test]
fn schur_sym3_of_generic_matrix() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &generic_2x4());
    let out = dir.path().join("s.json");
    let o = schurcx(&["schur", "--complex", p(&f), "--shape", "3", "--out", p(&out)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4 <- 12 <- 12 <- 4");
    let doc = parse_complex(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc.complex.ranks(), &[4, 12, 12, 4]);
    assert!(doc.complex.is_valid());
    assert_eq!(doc.basis.unwrap().iter().map(|(_, ts)| ts.len()).collect::<Vec<_>>(), vec![4, 12, 12, 4]);

    let o = schurcx(&["ranks", "--complex", p(&out)]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "rank d_1 = 4\nrank d_2 = 8\nrank d_3 = 4\nH_0 = 0\nH_1 = 0\nH_2 = 0\nH_3 = 0\n"
    );
}

#[test]
fn schur_exterior_square_of_koszul() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    let o = schurcx(&["schur", "--complex", p(&f), "--shape", "1,1"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stderr.clone()).unwrap().trim(), "2 <- 4 <- 2");
    let doc = parse_complex(&stdout(&o)).unwrap();
    assert_eq!(doc.complex.min_degree(), 1);
    assert_eq!(doc.complex.ranks(), &[2, 4, 2]);

    let conj = schurcx(&["schur", "--complex", p(&f), "--shape", "2", "--conjugate"]);
    assert_eq!(conj.stdout, o.stdout);
}

#[test]
fn schur_one_box_is_the_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &generic_2x4());
    let o = schurcx(&["schur", "--complex", p(&f), "--shape", "1"]);
    assert!(o.status.success());
    let out = parse_complex(&stdout(&o)).unwrap();
    let input = parse_complex(&fs::read_to_string(&f).unwrap()).unwrap().complex;
    // odd labels sort as -4 < -3 < -2 < -1, so the degree-1 basis comes out reversed
    let basis = out.basis.unwrap();
    assert_eq!(basis[1].1.iter().map(|t| t.columns()[0][0]).collect::<Vec<_>>(), vec![-4, -3, -2, -1]);
    let (d_out, d_in) = (out.complex.differential(1).unwrap(), input.differential(1).unwrap());
    for i in 0..2 {
        for j in 0..4 {
            assert_eq!(d_out.get(i, j), d_in.get(i, 3 - j));
        }
    }
}

#[test]
fn schur_output_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    let a = schurcx(&["schur", "--complex", p(&f), "--shape", "2,1"]);
    let b = schurcx(&["schur", "--complex", p(&f), "--shape", "2,1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc = parse_complex(&stdout(&a)).unwrap();
    let again = schur_core::io::complex_to_json(&doc.complex, None);
    assert_eq!(parse_complex(&again).unwrap().complex, doc.complex);
}

#[test]
fn schur_rejects_invalid_complex() {
    let dir = TempDir::new().unwrap();
    let mut bad = koszul_xy();
    bad["differentials"][1][0][0] = json!("y");
    let f = write(&dir, "bad.json", &bad);
    assert_eq!(schurcx(&["schur", "--complex", p(&f), "--shape", "2"]).status.code(), Some(3));
    let g = dir.path().join("g.json");
    fs::write(&g, "not json").unwrap();
    assert_eq!(schurcx(&["schur", "--complex", p(&g), "--shape", "2"]).status.code(), Some(2));
}

#[test]
fn verify_reports() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    let o = schurcx(&["verify", "--complex", p(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "ok\n");

    // x*y + y*x = 2xy after flipping the sign of -y
    let mut bad = koszul_xy();
    bad["differentials"][1][0][0] = json!("y");
    let f = write(&dir, "bad.json", &bad);
    let o = schurcx(&["verify", "--complex", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "d1 * d2 is nonzero\n");

    let single = json!({"ring": {"coefficients": "QQ", "variables": []}, "min_degree": 0, "ranks": [3], "differentials": []});
    let f = write(&dir, "one.json", &single);
    assert_eq!(schurcx(&["verify", "--complex", p(&f)]).status.code(), Some(0));

    let g = dir.path().join("g.json");
    fs::write(&g, "[").unwrap();
    assert_eq!(schurcx(&["verify", "--complex", p(&g)]).status.code(), Some(2));
}

#[test]
fn ranks_examples() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    for extra in [&[][..], &["--exact"][..], &["--seed", "7", "--trials", "1"][..]] {
        let mut args = vec!["ranks", "--complex", p(&f)];
        args.extend_from_slice(extra);
        let o = schurcx(&args);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "rank d_1 = 1\nrank d_2 = 1\nH_0 = 0\nH_1 = 0\nH_2 = 0\n");
    }
    let o = schurcx(&["ranks", "--complex", p(&f), "--degree", "1"]);
    assert_eq!(stdout(&o), "rank d_1 = 1\nH_1 = 0\n");

    let zero = json!({
        "ring": {"coefficients": {"p": 2}, "variables": ["t"]},
        "min_degree": -1,
        "ranks": [2, 0, 3],
        "differentials": [[[], []], []]
    });
    let f = write(&dir, "z.json", &zero);
    let o = schurcx(&["ranks", "--complex", p(&f)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "rank d_0 = 0\nrank d_1 = 0\nH_-1 = 2\nH_0 = 0\nH_1 = 3\n");
}

#[test]
fn homology_at_points() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    let o = schurcx(&["homology", "--complex", p(&f), "--point", "0,0"]);
    assert_eq!(stdout(&o), "H_0 = 1\nH_1 = 2\nH_2 = 1\n");
    let o = schurcx(&["homology", "--complex", p(&f), "--point", "-1/2,3"]);
    assert_eq!(stdout(&o), "H_0 = 0\nH_1 = 0\nH_2 = 0\n");
    let o = schurcx(&["homology", "--complex", p(&f), "--point", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = schurcx(&["homology", "--complex", p(&f), "--point", "x,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(schurcx(&[]).status.code(), Some(2));
    assert_eq!(schurcx(&["schur", "--complex", "x.json", "--shape", "2,3"]).status.code(), Some(2));
}

#[test]
fn written_files_match_library_values() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k.json", &koszul_xy());
    let o = schurcx(&["schur", "--complex", p(&f), "--shape", "2"]);
    let doc = parse_complex(&stdout(&o)).unwrap();
    let r = Ring::with_vars(schur_core::CoefficientField::Rationals, &["x", "y"]).unwrap();
    let k = FreeComplex::koszul(&[Polynomial::var(&r, "x").unwrap(), Polynomial::var(&r, "y").unwrap()]).unwrap();
    let s = schur_core::symmetric_power(2, &k).unwrap();
    assert_eq!(doc.complex, s.complex);
    let basis = doc.basis.unwrap();
    for (deg, ts) in &basis {
        assert_eq!(ts.as_slice(), s.basis.tableaux(*deg));
    }
    let _: Vec<&Tableau> = basis.iter().flat_map(|(_, ts)| ts).collect();
}
