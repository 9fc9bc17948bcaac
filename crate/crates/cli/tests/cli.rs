use std::process::{Command, Output};

use cmtorsion::numberfield::{fields_isomorphic, CubicField};
use cmtorsion::Poly;
use cmtorsion_cli::document::{ClassTableDocument, GrowthTableDocument, ReportDocument, VerdictDoc};
use cmtorsion_cli::verify::VerifyDocument;
use num_bigint::BigInt;
use serde_json::Value;

fn cmtorsion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmtorsion"))
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

fn assert_valid(v: &Value) {
    let s: Value = serde_json::from_str(include_str!("../schema/cmtorsion.schema.json")).unwrap();
    let schema = jsonschema::JSONSchema::compile(&s).expect("schema compiles");
    let msgs: Vec<String> = match schema.validate(v) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:#?}");
}

fn json_of(args: &[&str]) -> Value {
    let o = cmtorsion(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn field(dense: &[String]) -> std::sync::Arc<CubicField> {
    CubicField::new(Poly::from_dense_strings(dense).unwrap()).unwrap()
}

fn same_field(dense: &[String], ints: &[i64]) -> bool {
    fields_isomorphic(&field(dense), &CubicField::new(Poly::from_ints(ints)).unwrap()).unwrap()
}

#[test]
fn classify_mordell_sixteen() {
    let v = json_of(&[
        "classify",
        "--cm",
        "3",
        "--k",
        "16",
        "--format",
        "json",
        "--cross-check",
    ]);
    assert_valid(&v);
    let doc: ReportDocument = serde_json::from_value(v).unwrap();
    assert_eq!(doc.torsion_q.group, "C3");
    let groups: Vec<&str> = doc.growths.iter().map(|g| g.group.as_str()).collect();
    assert_eq!(groups, ["C6", "C9"]);
    // x^3 - 16 and x^3 - 2 define the same field
    assert!(same_field(&doc.growths[0].field.dense, &[-16, 0, 0, 1]));
    assert!(same_field(&doc.growths[1].field.dense, &[-1, -3, 0, 1]));
    assert_eq!(doc.cross_check.unwrap().verdict, VerdictDoc::Match);
}

#[test]
fn classify_curve_with_full_rational_torsion() {
    let v = json_of(&["classify", "--curve", "0,1", "--format", "json"]);
    assert_valid(&v);
    let doc: ReportDocument = serde_json::from_value(v).unwrap();
    assert_eq!((doc.inv.cm, doc.inv.k.as_str()), (3, "1"));
    assert_eq!(doc.torsion_q.group, "C6");
    assert!(doc.growths.is_empty());
}

#[test]
fn classify_non_cm_curve() {
    let o = cmtorsion(&["classify", "--curve", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("not a CM curve"), "{err}");
    // j = 1728 * 4a^3 / (4a^3 + 27b^2) at a = b = 1; 31 is prime and 6912 = 2^8 3^3
    let (num, den) = j_of(&BigInt::from(1), &BigInt::from(1));
    assert!(err.contains(&format!("{num}/{den}")), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(cmtorsion(&["classify", "--curve", "0,0"]).status.code(), Some(3));
    // 4(-3)^3 + 27(2)^2 = 0
    assert_eq!(cmtorsion(&["classify", "--curve", "-3,2"]).status.code(), Some(3));
    for bad in [
        &["classify"][..],
        &["classify", "--curve", "1/0,1"],
        &["classify", "--curve", "0.5,1"],
        &["classify", "--curve", "1"],
        &["classify", "--cm", "3"],
        &["classify", "--cm", "5", "--k", "1"],
        &["classify", "--cm", "3", "--k", "0"],
        &["classify", "--cm", "3", "--k", "1/2"],
        &["classify", "--curve", "0,1", "--cm", "3", "--k", "1"],
        &["verify", "--k-range", "5"],
        &["verify", "--k-range", "3,-3"],
        &["verify", "--cm-list", "5"],
        &["verify", "--jobs", "0", "--cm-list", "8", "--k-range", "1,1"],
        &["tables", "--which", "3"],
        &["frobnicate"],
    ] {
        let o = cmtorsion(bad);
        assert_eq!(o.status.code(), Some(1), "{bad:?}: {}", stderr(&o));
    }
    assert_eq!(cmtorsion(&["--help"]).status.code(), Some(0));
    assert_eq!(cmtorsion(&["--version"]).status.code(), Some(0));
    assert_eq!(cmtorsion(&["classify", "--help"]).status.code(), Some(0));
}

#[test]
fn rational_curve_input() {
    // y^2 = x^3 + 1/64 is y^2 = x^3 + 1 rescaled by u = 1/2
    let v = json_of(&["classify", "--curve", "0,1/64", "--format", "json"]);
    assert_valid(&v);
    let doc: ReportDocument = serde_json::from_value(v).unwrap();
    assert_eq!(
        (doc.inv.cm, doc.inv.k.as_str(), doc.torsion_q.group.as_str()),
        (3, "1", "C6")
    );
    // k is reduced modulo sixth powers: 16 * 2^6
    let v = json_of(&["classify", "--cm", "3", "--k", "1024", "--format", "json"]);
    let doc: ReportDocument = serde_json::from_value(v).unwrap();
    assert_eq!(doc.inv.k, "16");
}

#[test]
fn text_and_json_agree() {
    let args = ["classify", "--cm", "27", "--k", "-3", "--cross-check"];
    let text = stdout(&cmtorsion(&args));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let doc: ReportDocument = serde_json::from_value(json_of(&json_args)).unwrap();
    assert_eq!(doc.to_text(), text);
}

#[test]
fn verify_heegner_like_twists() {
    let v = json_of(&["verify", "--cm-list", "7,28", "--k-range", "-50,50", "--format", "json"]);
    assert_valid(&v);
    let doc: VerifyDocument = serde_json::from_value(v).unwrap();
    assert!(doc.all_match());
    let grown: Vec<(u32, &str)> = doc
        .lines
        .iter()
        .filter(|l| !l.growths.is_empty())
        .map(|l| (l.inv.cm, l.inv.k.as_str()))
        .collect();
    assert_eq!(grown, [(7, "-7"), (28, "7")]);
    // squarefree k in [-50, 50], once per class
    let squarefree = (-50i64..=50)
        .filter(|&k| k != 0 && (2..=7).all(|p: i64| k % (p * p) != 0))
        .count();
    assert_eq!(doc.lines.len(), 2 * squarefree);
}

#[test]
fn verify_cm8_has_no_growth() {
    let o = cmtorsion(&["verify", "--cm-list", "8", "--k-range", "-50,50", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with("MATCH") || l.starts_with("MISMATCH"))
        .collect();
    assert!(!lines.is_empty());
    assert!(
        lines.iter().all(|l| l.starts_with("MATCH") && l.ends_with("C2 -> []")),
        "{out}"
    );
    assert!(out.contains("0 MISMATCH"));
}

#[test]
fn verify_sorted_and_deduplicated() {
    let o = cmtorsion(&["verify", "--cm-list", "3", "--k-range", "-1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("MATCH (cm = 3, k = -1)"));
    assert!(lines[1].starts_with("MATCH (cm = 3, k = 1)"));
    assert_eq!(lines[2], "checked 2 curves: 2 MATCH, 0 MISMATCH");
    // 4, 8 and 9 reduce to 1, 2 and 1 in squarefree classes
    let doc: VerifyDocument = serde_json::from_value(json_of(&[
        "verify",
        "--cm-list",
        "16,7",
        "--k-range",
        "1,9",
        "--format",
        "json",
    ]))
    .unwrap();
    let keys: Vec<(u32, String)> = doc.lines.iter().map(|l| (l.inv.cm, l.inv.k.clone())).collect();
    let expect: Vec<(u32, String)> = [
        (7, 1),
        (7, 2),
        (7, 3),
        (7, 5),
        (7, 6),
        (7, 7),
        (16, 1),
        (16, 2),
        (16, 3),
        (16, 5),
        (16, 6),
        (16, 7),
    ]
    .iter()
    .map(|&(c, k)| (c, k.to_string()))
    .collect();
    assert_eq!(keys, expect);
}

/// `1728 * 4A^3 / (4A^3 + 27B^2)`.
fn j_of(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let four_a3 = BigInt::from(4) * a * a * a;
    let num = BigInt::from(1728) * &four_a3;
    let den = four_a3 + BigInt::from(27) * b * b;
    let g = num_gcd(&num, &den);
    let g = if den < BigInt::from(0) { -g } else { g };
    (num / &g, den / &g)
}

fn num_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigInt::from(0) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a < BigInt::from(0) {
        -a
    } else {
        a
    }
}

#[test]
fn class_table_json() {
    let v = json_of(&["tables", "--which", "2", "--format", "json"]);
    assert_valid(&v);
    let doc: ClassTableDocument = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(doc.classes.len(), 13);
    for c in &doc.classes {
        let (num, den) = j_of(&c.a.parse().unwrap(), &c.b.parse().unwrap());
        assert_eq!(den, BigInt::from(1), "cm {}", c.cm);
        assert_eq!(num.to_string(), c.j, "cm {}", c.cm);
        // the factored form multiplies back
        let prod = c
            .j_factored
            .trim_start_matches('-')
            .split('*')
            .fold(BigInt::from(1), |acc, t| {
                let (p, e) = t.split_once('^').unwrap_or((t, "1"));
                acc * p.parse::<BigInt>().unwrap().pow(e.parse().unwrap())
            });
        let prod = if c.j_factored.starts_with('-') { -prod } else { prod };
        if c.j != "0" {
            assert_eq!(prod.to_string(), c.j);
        }
    }
    let rows: usize = doc.classes.iter().map(|c| c.torsion.len()).sum();
    assert_eq!(rows, 21);
    assert_eq!(serde_json::to_value(&doc).unwrap(), v);
}

#[test]
fn growth_table_round_trip() {
    let o = cmtorsion(&["tables", "--which", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_valid(&v);
    let doc: GrowthTableDocument = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(doc.rows.len(), cmtorsion::cubicgrowth::growth_rows().len());

    let md = stdout(&cmtorsion(&["tables", "--which", "1", "--format", "markdown"]));
    let md_rows: Vec<&str> = md.lines().skip(2).collect();
    assert_eq!(md_rows.len(), doc.rows.len());
    assert!(md_rows.iter().all(|r| r.matches('|').count() == 7));
    assert!(md.contains("a^3 + a^2 - 2*a - 1 = 0"));
    assert!(md.contains("a^3 - 3*a - 1 = 0"));
}

#[test]
fn report_round_trip() {
    let o = cmtorsion(&[
        "classify",
        "--cm",
        "7",
        "--k",
        "-7",
        "--format",
        "json",
        "--cross-check",
    ]);
    let text = stdout(&o);
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    assert_eq!(doc.growths[0].group, "C14");
    assert!(same_field(&doc.growths[0].field.dense, &[-1, -2, 1, 1]));
}

#[test]
fn schema_rejects_malformed_documents() {
    let v = json_of(&["classify", "--cm", "11", "--k", "1", "--format", "json"]);
    let s: Value = serde_json::from_str(include_str!("../schema/cmtorsion.schema.json")).unwrap();
    let schema = jsonschema::JSONSchema::compile(&s).unwrap();
    assert!(schema.is_valid(&v));
    for (path, bad) in [
        ("/torsion_q/group", Value::from("Z6")),
        ("/inv/k", Value::from("1.5")),
        ("/growths/0/field/dense/0", Value::from(3)),
        ("/schema_version", Value::from("0.9")),
    ] {
        let mut w = v.clone();
        *w.pointer_mut(path).unwrap() = bad;
        assert!(!schema.is_valid(&w), "{path}");
    }
    let mut w = v.clone();
    w.as_object_mut().unwrap().insert("extra".into(), Value::Null);
    assert!(!schema.is_valid(&w));
}
