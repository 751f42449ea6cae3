//! Acceptance suite: every release criterion, run at its stated budget.
//! Each test prints one pass/fail line (visible with `--nocapture`).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use compoly::bijection::verify_bijection;
use compoly::composition::{compositions_of, Composition};
use compoly::descent::{check_dynkin_identities, dynkin, q_dynkin, psi_to_perm};
use compoly::gpoly::{check_ad_recursion, g_integral, g_recursive, p_at_zero, reduced_p};
use compoly::nsym::{check_qbracket_identity, s_1mq_psi, s_psi};
use compoly::permutition::{count_permutitions, count_shape, sinv_polynomial};
use compoly::qpoly::QPoly;
use compoly::rational::{int, rat};

fn c(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn run_cli(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_compoly"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().unwrap_or(-1),
    )
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    started: Instant,
}

impl Criterion {
    fn new(label: &'static str, budget_secs: u64) -> Self {
        Criterion {
            label,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        let ok = elapsed <= self.budget;
        println!(
            "{} {} ({:.2?} of {:?} budget)",
            if ok { "PASS" } else { "FAIL" },
            self.label,
            elapsed,
            self.budget
        );
        assert!(
            ok,
            "{} exceeded its time budget: {elapsed:.2?} > {:?}",
            self.label, self.budget
        );
    }
}

#[test]
fn criterion_01_table_4_reproduces_the_eight_polynomials() {
    let crit = Criterion::new("criterion 1: weight-4 table", 1);
    let (stdout, _, code) = run_cli(&["table", "4"]);
    assert_eq!(code, 0);
    let expected = "\
1,1,1,1: 1
1,1,2: q+3
1,2,1: 2q+2
1,3: 2q^2+4q+6
2,1,1: 3q+1
2,2: 3q^2+6q+3
3,1: 6q^2+4q+2
4: 6q^3+6q^2+6q+6
";
    assert_eq!(stdout, expected, "table 4 must match the eight known rows");
    crit.finish();
}

#[test]
fn criterion_02_transform_coefficients_match_factored_forms() {
    let crit = Criterion::new("criterion 2: degree-4 transform coefficients", 1);
    let t = s_1mq_psi(4);
    let one_minus_q = QPoly::from_integers(&[1, -1]);
    // 4! times each coefficient, as the factored display writes them
    let cases: Vec<(&[usize], QPoly)> = vec![
        (
            &[4],
            QPoly::from_integers(&[6])
                * one_minus_q.clone()
                * QPoly::from_integers(&[1, 1])
                * QPoly::from_integers(&[1, 0, 1]),
        ),
        (
            &[3, 1],
            QPoly::from_integers(&[2]) * QPoly::from_integers(&[1, 2, 3]) * one_minus_q.pow(2),
        ),
        (
            &[2, 2],
            QPoly::from_integers(&[3]) * QPoly::from_integers(&[1, 1]).pow(2) * one_minus_q.pow(2),
        ),
        (
            &[2, 1, 1],
            QPoly::from_integers(&[1, 3]) * one_minus_q.pow(3),
        ),
        (
            &[1, 3],
            QPoly::from_integers(&[2]) * QPoly::from_integers(&[3, 2, 1]) * one_minus_q.pow(2),
        ),
        (
            &[1, 2, 1],
            QPoly::from_integers(&[2]) * QPoly::from_integers(&[1, 1]) * one_minus_q.pow(3),
        ),
        (
            &[1, 1, 2],
            QPoly::from_integers(&[3, 1]) * one_minus_q.pow(3),
        ),
        (&[1, 1, 1, 1], one_minus_q.pow(4)),
    ];
    assert_eq!(cases.len(), 8);
    for (parts, expanded) in cases {
        let i = c(parts);
        let coeff = t.coefficient(&i).unwrap().scale(&int(24));
        assert_eq!(coeff, expanded, "coefficient of Psi^({i})");
    }
    crit.finish();
}

#[test]
fn criterion_03_sinv_theorem_to_weight_8() {
    let crit = Criterion::new("criterion 3: sinv theorem, weights 1..=8", 60);
    for n in 1..=8 {
        for i in compositions_of(n) {
            assert_eq!(
                sinv_polynomial(&i),
                reduced_p(&i).unwrap(),
                "sinv generating function differs from P_{i}"
            );
        }
    }
    crit.finish();
}

#[test]
fn criterion_04_coefficient_oracle_to_weight_8() {
    let crit = Criterion::new("criterion 4: coefficient oracle, weights 1..=8", 30);
    for n in 1..=8 {
        let expansion = s_1mq_psi(n);
        for i in compositions_of(n) {
            let coeff = expansion.coefficient(&i).unwrap();
            let integral = g_integral(&i);
            let recursive = g_recursive(&i);
            assert_eq!(coeff, integral, "coefficient route differs at I={i}");
            assert_eq!(integral, recursive, "recursion route differs at I={i}");
        }
    }
    crit.finish();
}

#[test]
fn criterion_05_bijection_to_weight_7_with_traces() {
    let crit = Criterion::new("criterion 5: bijection, weights 2..=7 + traces", 120);
    for n in 2..=7 {
        for i in compositions_of(n) {
            if i.len() < 2 {
                continue;
            }
            let v = verify_bijection(&i, false).unwrap();
            assert!(
                v.report.passed(),
                "I={i}: {:?}",
                v.report.failures().collect::<Vec<_>>()
            );
        }
    }

    // the four worked examples reproduce in trace mode
    let (stdout, _, code) = run_cli(&["verify", "bijection", "3,2,3", "--trace", "--stable"]);
    assert_eq!(code, 0);
    for row in [
        "(361|74|258, 3) -> (42|135, 163)",
        "(163|74|258, 1) -> (361|74|258, 1)",
        "(26371|458) -> (41|235, 263)",
        "(36174|258) -> (163|74|258, 1)",
    ] {
        assert!(stdout.contains(row), "missing worked example: {row}");
    }

    // the two worked tables reproduce verbatim (typo-corrected rows), as sets
    let (stdout, _, code) = run_cli(&["verify", "bijection", "2,1,1", "--trace", "--stable"]);
    assert_eq!(code, 0);
    let expected: BTreeSet<&str> = [
        "(12|3|4, 1) -> (21|3|4, 1)  (1, q)",
        "(12|3|4, 2) -> (21|3|4, 2)  (1, q)",
        "(21|3|4, 1) -> (1|2, 21)  (q, 1)",
        "(21|3|4, 2) -> (1|2, 12)  (q, 1)",
        "(31|2|4, 1) -> (1|2, 31)  (q, 1)",
        "(31|2|4, 3) -> (1|2, 13)  (q, 1)",
        "(41|2|3, 1) -> (1|2, 41)  (q, 1)",
        "(41|2|3, 4) -> (1|2, 14)  (q, 1)",
        "(123|4) -> (12|3|4, 2)  (1, 1)",
        "(213|4) -> (12|3|4, 1)  (1, 1)",
        "(132|4) -> (31|2|4, 3)  (q, q)",
        "(312|4) -> (31|2|4, 1)  (q, q)",
        "(142|3) -> (41|2|3, 4)  (q, q)",
        "(412|3) -> (41|2|3, 1)  (q, q)",
        "(231|4) -> (1|2, 23)  (q^2, 1)",
        "(321|4) -> (1|2, 32)  (q^2, 1)",
        "(241|3) -> (1|2, 24)  (q^2, 1)",
        "(421|3) -> (1|2, 42)  (q^2, 1)",
        "(341|2) -> (1|2, 34)  (q^2, 1)",
        "(431|2) -> (1|2, 43)  (q^2, 1)",
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<&str> = stdout
        .lines()
        .filter(|l| l.contains("->"))
        .collect();
    assert_eq!(got, expected, "trace rows for I=(2,1,1)");
    crit.finish();
}

#[test]
fn criterion_06_recursion_identity_to_weight_10() {
    let crit = Criterion::new("criterion 6: recursion identity, weights 2..=10", 10);
    for n in 2..=10 {
        let report = check_ad_recursion(n);
        assert!(
            report.passed(),
            "n={n}: {:?}",
            report.failures().collect::<Vec<_>>()
        );
    }
    crit.finish();
}

#[test]
fn criterion_07_specializations_to_weight_8() {
    let crit = Criterion::new("criterion 7: specializations, weights 1..=8", 60);
    for n in 1..=8 {
        for i in compositions_of(n) {
            let p = reduced_p(&i).unwrap();
            assert_eq!(p.eval(&int(0)), p_at_zero(&i), "P_{i}(0)");
            assert_eq!(
                p.eval(&int(1)),
                int(i64::try_from(count_shape(&i)).unwrap()),
                "P_{i}(1)"
            );
        }
    }
    crit.finish();
}

#[test]
fn criterion_08_counts_to_size_8() {
    let crit = Criterion::new("criterion 8: permutition counts, sizes 0..=8", 60);
    let expected: [u64; 9] = [1, 1, 3, 13, 73, 501, 4051, 37633, 394353];
    for (n, &want) in expected.iter().enumerate() {
        assert_eq!(count_permutitions(n), want, "count at size {n}");
    }
    crit.finish();
}

#[test]
fn criterion_09_descent_algebra_identities_to_degree_6() {
    let crit = Criterion::new("criterion 9: descent-algebra identities, degrees 1..=6", 60);
    // frozen expansion of the degree-3 iterated bracket
    let d3 = dynkin(3);
    assert_eq!(d3.num_terms(), 4);
    assert_eq!(d3.coefficient(&[1, 2, 3]), QPoly::one());
    assert_eq!(d3.coefficient(&[2, 1, 3]), QPoly::constant(int(-1)));
    assert_eq!(d3.coefficient(&[3, 1, 2]), QPoly::constant(int(-1)));
    assert_eq!(d3.coefficient(&[3, 2, 1]), QPoly::one());
    for n in 1..=6 {
        let report = check_dynkin_identities(n);
        assert!(
            report.passed(),
            "n={n}: {:?}",
            report.failures().collect::<Vec<_>>()
        );
    }
    crit.finish();
}

#[test]
fn criterion_10_qbracket_identity_to_degree_6() {
    let crit = Criterion::new("criterion 10: q-bracket identity, degrees 1..=6", 60);
    // gate: the convention self-check of criterion 9 must hold first
    for n in 1..=6 {
        assert_eq!(
            psi_to_perm(&s_psi(n)),
            compoly::descent::PermAlgebraElement::identity_word(n),
            "convention self-check at degree {n}"
        );
        assert_eq!(
            psi_to_perm(&s_1mq_psi(n)),
            q_dynkin(n),
            "q-bracketing image at degree {n}"
        );
    }
    for n in 1..=6 {
        let report = check_qbracket_identity(n);
        assert!(
            report.passed(),
            "n={n}: {:?}",
            report.failures().collect::<Vec<_>>()
        );
    }
    crit.finish();
}

#[test]
fn sanity_reduced_fraction_example() {
    // f_(2,2) = P_(2,2)/4! printed with rational coefficients
    let (stdout, _, code) = run_cli(&["poly", "2,2", "--which", "f"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim_end(), "(1/8)q^2+(1/4)q+(1/8)");
    let f = compoly::gpoly::f_reduced(&c(&[2, 2])).unwrap();
    assert_eq!(
        f,
        QPoly::from_coeffs(vec![rat(1, 8), rat(1, 4), rat(1, 8)])
    );
}
