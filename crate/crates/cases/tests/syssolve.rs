use dualcell_cases::hypercomb::*;
use dualcell_cases::syssolve::cone::{cone_tests, rotate, signed_orbit, OpenCone};
use dualcell_cases::syssolve::final_case::LISTED_IMAGES;
use dualcell_cases::syssolve::*;
use dualcell_core::rat::{neg, primitive, qvec, sub, QVec, Rat};
use dualcell_core::tiling::Dual3Type;
use itertools::Itertools;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn parse(rows: &[&str]) -> Vec<QVec> {
    rows.iter().map(|r| r.split_whitespace().map(|x| x.parse::<Rat>().unwrap()).collect()).collect()
}

/// Published 5-10 solution matrices, columns `v12 v13 v14 v15 v23 v24 v25 v34 v35 v45`.
fn five_ten_golden(row: usize) -> Option<Vec<QVec>> {
    let m: &[&str] = match row {
        4 => &["0 1 0 1 0 0 0 1 0 1", "0 0 1 1 0 0 0 1 -1 0", "0 0 0 0 1 1 0 0 1 1", "0 0 0 0 1 0 1 0 1 0"],
        6 => &["0 1 1 0 0 0 0 0 -1 1", "0 0 1 1 0 0 0 0 0 1", "0 0 0 0 1 1 0 0 1 -1", "0 0 0 0 1 0 1 0 1 0"],
        7 => &["0 1 0 1 0 0 0 1 0 -1", "0 0 1 1 0 0 0 1 1 0", "0 0 0 0 1 1 0 0 1 1", "0 0 0 0 1 0 1 -1 0 1"],
        8 => &["0 1 1 0 0 0 0 1 0 0", "0 1 0 1 0 0 0 0 1 0", "0 0 0 0 1 1 0 1 0 0", "0 0 0 0 1 0 1 0 1 0"],
        _ => return None,
    };
    Some(parse(m))
}

/// Published 6-11 solution matrices, columns `s v11' .. v33' s'`.
fn six_eleven_golden(row: usize) -> Option<Vec<QVec>> {
    let m: &[&str] = match row {
        1 => &["0 1 1 0 0 0 0 1 1 0 0", "0 1 0 1 0 0 0 1 0 1 0", "0 0 0 0 1 1 0 -1 -1 0 0", "0 0 0 0 1 0 1 -1 0 -1 0"],
        2 => &["0 1 1 0 0 0 0 1 1 0 0", "0 1 0 1 0 0 0 3 2 1 2", "0 0 0 0 1 1 0 -1 -1 0 0", "0 0 0 0 1 0 1 -3 -2 -1 -2"],
        3 => &["0 1 1 0 0 0 0 3 1 2 2", "0 1 0 1 0 0 0 3 2 1 2", "0 0 0 0 1 1 0 -3 -1 -2 -2", "0 0 0 0 1 0 1 -3 -2 -1 -2"],
        4 => &["0 1 1 0 0 0 0 -1 -3 2 -2", "0 1 0 1 0 0 0 1 0 1 0", "0 0 0 0 1 1 0 1 3 -2 2", "0 0 0 0 1 0 1 1 2 -1 2"],
        5 => &["0 1 1 0 0 0 0 1 1 0 0", "0 1 0 1 0 0 0 1 0 -1 0", "0 0 0 0 1 1 0 -1 -1 0 0", "0 0 0 0 1 0 1 -1 0 1 0"],
        6 => &["0 1 1 0 0 0 0 1 1 0 0", "0 1 0 1 0 0 0 3 2 1 2", "0 0 0 0 1 1 0 -1 -1 0 0", "0 0 0 0 0 1 1 0 -1 1 0"],
        7 => &["0 1 1 0 0 0 0 1 1 0 0", "0 0 1 1 0 0 0 0 1 -1 0", "0 0 0 0 1 1 0 -1 -1 0 0", "0 0 0 0 1 0 1 -3 -2 -1 -2"],
        9 => &["0 1 1 0 0 0 0 3 1 2 2", "0 1 0 1 0 0 0 1 0 1 0", "0 0 0 0 1 1 0 -3 -1 -2 -2", "0 0 0 0 0 1 1 0 1 -1 0"],
        10 => &["0 1 1 0 0 0 0 3 1 2 2", "0 0 1 1 0 0 0 0 -1 1 0", "0 0 0 0 1 1 0 -3 -1 -2 -2", "0 0 0 0 1 0 1 -1 0 -1 0"],
        13 => &["0 1 1 0 0 0 0 -3 -1 -2 -2", "0 0 1 1 0 0 0 -2 -1 -1 -2", "0 0 0 0 1 1 0 3 1 2 2", "0 0 0 0 1 0 1 3 2 1 2"],
        14 => &["0 1 1 0 0 0 0 3 1 -2 2", "0 1 0 1 0 0 0 3 2 -1 2", "0 0 0 0 1 1 0 -3 -1 2 -2", "0 0 0 0 1 0 1 -1 0 1 0"],
        15 => &["0 1 1 0 0 0 0 -1 -3 2 -2", "0 1 0 1 0 0 0 1 0 1 0", "0 0 0 0 1 1 0 1 3 -2 2", "0 0 0 0 0 1 1 2 3 -1 2"],
        16 => &["0 1 1 0 0 0 0 -1 -3 2 -2", "0 0 1 1 0 0 0 0 -1 1 0", "0 0 0 0 1 1 0 1 3 -2 2", "0 0 0 0 1 0 1 1 2 -1 2"],
        17 => &["0 1 1 0 0 0 0 1 -1 0 0", "0 1 0 1 0 0 0 1 0 1 0", "0 0 0 0 1 1 0 -1 1 0 0", "0 0 0 0 0 1 1 0 1 1 0"],
        18 => &[
            "0 1 1 0 0 0 0 -1 1 0 0",
            "0 1 0 1 0 0 0 -1/3 2/3 1/3 2/3",
            "0 0 0 0 1 1 0 1 -1 0 0",
            "0 0 0 0 0 1 1 2/3 -1/3 1/3 2/3",
        ],
        _ => return None,
    };
    Some(parse(m))
}

fn label(ls: &LinearSystem, name: &str) -> usize {
    ls.labels.iter().position(|l| l == name).unwrap()
}

#[test]
fn first_systems_match_displayed_equations() {
    let ls = LinearSystem::five_ten(&scheme_to_matching(&reference_schemes()[0])).unwrap();
    assert_eq!(ls.equations.len(), 5);
    let (v12, v13, v14, v15) = (label(&ls, "v12"), label(&ls, "v13"), label(&ls, "v14"), label(&ls, "v15"));
    let has = |a: usize, b: usize, c: usize, d: usize| {
        ls.equations.iter().any(|e| {
            let (l, r) = ([e[0], e[1]], [e[2], e[3]]);
            let same = |x: [usize; 2], y: [usize; 2]| BTreeSet::from(x) == BTreeSet::from(y);
            (same(l, [a, b]) && same(r, [c, d])) || (same(l, [c, d]) && same(r, [a, b]))
        })
    };
    assert!(has(v12, v15, v13, v14));
    let ls = LinearSystem::six_eleven(&SigmaPair::from_images([1, 1, 1], [1, 1, 1])).unwrap();
    assert_eq!(ls.equations.len(), 6);
    let (s, v11, v12, v13) = (label(&ls, "s"), label(&ls, "v11'"), label(&ls, "v12'"), label(&ls, "v13'"));
    assert!(ls.equations.iter().any(|e| BTreeSet::from([e[0], e[1]]) == BTreeSet::from([s, v11])
        && BTreeSet::from([e[2], e[3]]) == BTreeSet::from([v12, v13])));
}

#[test]
fn five_ten_table() {
    let t = run_all_cases().unwrap();
    assert_eq!(t.five_ten.len(), 8);
    let coincidences = [(4, "v34", "v15"), (6, "v34", "v12"), (8, "v45", "v12")];
    for r in &t.five_ten {
        let s = r.solved().unwrap();
        assert!(s.certified, "row {}", r.row);
        match r.row {
            1 | 3 | 5 => assert_eq!(s.report.kind, ContradictionKind::NoSolution, "row {}", r.row),
            2 | 7 => assert_eq!(s.report.kind, ContradictionKind::Residual, "row {}", r.row),
            _ => {
                assert_eq!(s.report.kind, ContradictionKind::Coincidence, "row {}", r.row);
                let (_, a, b) = coincidences.iter().find(|c| c.0 == r.row).unwrap();
                let want = BTreeSet::from([label(&s.system, a), label(&s.system, b)]);
                assert!(s.report.findings.iter().any(|f| matches!(f, Finding::Coincidence { a, b } if BTreeSet::from([*a, *b]) == want)));
            }
        }
        if let Some(g) = five_ten_golden(r.row) {
            assert_eq!(s.solution.as_ref().unwrap().matrix(), g, "row {}", r.row);
        }
    }
    assert_eq!(t.open_rows(), vec![(Family::FiveTen, 2)]);
}

#[test]
fn five_ten_row_two_family() {
    // the published family: v34 = a + (-1,-1,1,1), v35 = a + (0,-1,0,1), v45 = a
    let fixed = parse(&["0 1 1 0 0 0 0", "0 0 1 1 0 0 0", "0 0 0 0 1 1 0", "0 0 0 0 0 1 1"]);
    let (d34, d35) = (qvec(&[-1, -1, 1, 1]), qvec(&[0, -1, 0, 1]));
    let scheme = &reference_schemes()[1];
    let mut hits = 0;
    for perm in (0..5).permutations(5) {
        let ls = LinearSystem::five_ten(&scheme_to_matching(&scheme.relabel(&perm))).unwrap();
        let Solved::Family(sf) = ls.solve() else { continue };
        assert!(sf.satisfies(&ls));
        let m = sf.matrix();
        let head: Vec<QVec> = m.iter().map(|r| r[..7].to_vec()).collect();
        let (v34, v35, v45) = (label(&ls, "v34"), label(&ls, "v35"), label(&ls, "v45"));
        let one_param = sf.params.len() == 1 && (0..10).all(|l| sf.params[0][l] == Rat::from_integer(([v34, v35, v45].contains(&l) as i64).into()));
        if head == fixed && one_param && sub(&sf.points[v34], &sf.points[v45]) == d34 && sub(&sf.points[v35], &sf.points[v45]) == d35 {
            hits += 1;
            assert_eq!(analyze(&ls).1.kind, ContradictionKind::Residual);
            assert_eq!(sf.entry(0, v34), "a1-1");
        }
    }
    assert!(hits > 0);
}

#[test]
fn five_ten_row_seven_octahedron() {
    let t = run_all_cases().unwrap();
    let s = t.five_ten[6].solved().unwrap();
    let want: BTreeSet<usize> = ["v12", "v35", "v14", "v24", "v34", "v45"].iter().map(|n| label(&s.system, n)).collect();
    let f = s.octahedron.iter().find(|f| f.six.iter().copied().collect::<BTreeSet<_>>() == want).expect("published 6-set");
    assert_eq!(f.variant, OctahedronVariant::CoincidenceWithDiagonal);
    assert_eq!(f.center, parse(&["0 1/2 1/2 0"])[0]);
    assert_eq!(s.octahedron.len(), 5);
    assert!(s.octahedron.iter().all(|f| f.variant == OctahedronVariant::CoincidenceWithDiagonal));
    assert!(t.five_ten.iter().filter(|r| r.row != 7).all(|r| r.solved().unwrap().octahedron.is_empty()));
}

#[test]
fn six_eleven_table() {
    let t = run_all_cases().unwrap();
    assert_eq!(t.six_eleven.len(), 19);
    for r in &t.six_eleven {
        match r.row {
            8 | 11 | 12 => {
                let to = [(8, 6), (11, 7), (12, 10)].iter().find(|c| c.0 == r.row).unwrap().1;
                assert_eq!(r.status, CaseStatus::Reduced { to });
                continue;
            }
            _ => {}
        }
        let s = r.solved().unwrap();
        assert!(s.certified, "row {}", r.row);
        let (sv, sp) = (label(&s.system, "s"), label(&s.system, "s'"));
        let parity_or_equal = s.report.findings.iter().any(|f| match f {
            Finding::Coincidence { a, b } => BTreeSet::from([*a, *b]) == BTreeSet::from([sv, sp]),
            Finding::Parity { a, b, .. } => BTreeSet::from([*a, *b]) == BTreeSet::from([sv, sp]),
            _ => false,
        });
        assert!(parity_or_equal, "row {}", r.row);
        match r.row {
            1 | 5 | 17 => assert_eq!(s.report.kind, ContradictionKind::Coincidence, "row {}", r.row),
            _ => assert_eq!(s.report.kind, ContradictionKind::Parity, "row {}", r.row),
        }
        if r.row == 18 {
            assert!(s.report.has(ContradictionKind::Nonconvex));
        }
        assert_eq!(r.supplementary, r.row == 19);
        if let Some(g) = six_eleven_golden(r.row) {
            assert_eq!(s.solution.as_ref().unwrap().matrix(), g, "row {}", r.row);
        }
    }
    assert!(t.six_eleven.iter().all(|r| r.contradicted()));
}

#[test]
fn certificates_reject_tampering() {
    let t = run_all_cases().unwrap();
    for r in t.five_ten.iter().chain(&t.six_eleven) {
        let Some(s) = r.solved() else { continue };
        for f in &s.report.findings {
            let bad = match f.clone() {
                Finding::NoSolution { multipliers } => {
                    Finding::NoSolution { multipliers: vec![Rat::from_integer(0.into()); multipliers.len()] }
                }
                Finding::Parity { a, b, generators, mut coefficients } => {
                    coefficients[0] += 2;
                    Finding::Parity { a, b, generators, coefficients }
                }
                Finding::Coincidence { a, .. } => Finding::Coincidence { a, b: (a + 1) % s.system.labels.len() },
                Finding::Nonconvex { point, weights } => Finding::Nonconvex { point: (point + 1) % s.system.labels.len(), weights },
            };
            assert!(!verify_finding(&s.system, s.solution.as_ref(), &bad), "{:?} row {}", r.family, r.row);
        }
    }
}

#[test]
fn cone_tests_on_second_parallelogram() {
    let tests = cone_tests();
    assert_eq!(tests.len(), 30);
    let norm = |c: &OpenCone| -> (BTreeSet<QVec>, usize) { (c.strict.iter().map(|a| primitive(a)).collect(), c.zero.len()) };
    let expect = |v: &str, cons: &[[i64; 5]]| {
        let t = tests.iter().find(|t| t.vertex == v && t.parallelogram == 2).unwrap();
        // constraints written as b·x > 0, stored as (-b)·x < 0
        let want: BTreeSet<QVec> = cons.iter().map(|b| primitive(&neg(&qvec(b)))).collect();
        assert_eq!(norm(&t.relint()), (want, 0), "{v}");
    };
    expect("u2", &[[1, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]);
    expect("u4", &[[1, 0, 1, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, -1, 0]]);
    expect("u5", &[[1, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, -1]]);
    expect("u4+u5", &[[1, 0, 1, 0, 0], [0, 0, 0, 0, -1], [0, 0, 0, -1, 0], [-1, 0, -1, -1, -1]]);
}

#[test]
fn cone_pipeline_survivors() {
    let p = cone_test_pipeline();
    let x = qvec(&[-1, -1, -1, 1, 1]);
    assert_eq!(p.rays.iter().cloned().collect::<BTreeSet<_>>(), signed_orbit(&x));
    assert_eq!(p.rays.len(), 10);
    assert!(p.cyclic_invariant);
    assert!(p.pieces.iter().all(|s| s.dim == 1));
    assert_eq!(p.piece_counts[0], 32);
    assert!(p.tests.iter().all(|t| !t.excludes(&x)));
    let y = qvec(&[1, 1, 1, 1, 1]);
    assert!(p.tests.iter().any(|t| t.excludes(&y)));
}

#[test]
fn final_case() {
    let x = qvec(&[-1, -1, -1, 1, 1]);
    let r = final_case_check(&x).unwrap();
    assert_eq!(r.images.len(), 10);
    assert_eq!(r.images[9], qvec(&[2, 1, 1, -1]));
    assert!(r.images.iter().zip(LISTED_IMAGES).all(|(a, b)| *a == qvec(&b)));
    assert_eq!(r.forced_vertex, qvec(&[1, 0, 1, 0]));
    assert_eq!(r.prism_type, Dual3Type::TriangularPrism);
    assert_eq!(r.prism.len(), 6);
    assert_eq!((r.implied_vertices, r.known_vertices), (8, 10));
    assert!(r.contradiction && r.parallelograms_are_faces);
    assert!(final_case_check(&qvec(&[1, 1, 1, 1, 1])).is_err());
    assert!(final_case_check(&rotate(&x)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeled_systems_solve_consistently(item in 0usize..8, perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let scheme = reference_schemes()[item].relabel(&perm);
        let ls = LinearSystem::five_ten(&scheme_to_matching(&scheme)).unwrap();
        let (sf, report) = analyze(&ls);
        if let Some(sf) = &sf {
            prop_assert!(sf.satisfies(&ls));
        } else {
            prop_assert_eq!(report.kind, ContradictionKind::NoSolution);
        }
        for f in &report.findings {
            prop_assert!(verify_finding(&ls, sf.as_ref(), f));
        }
    }

    #[test]
    fn relabeled_sigma_pairs_solve_consistently(
        item in 0usize..18,
        pi in Just(vec![0usize, 1, 2]).prop_shuffle(),
        rho in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let (s, sp) = six_eleven::REFERENCE_ITEMS[item];
        let p = SigmaPair::from_images(s, sp).relabel(&[pi[0], pi[1], pi[2]], &[rho[0], rho[1], rho[2]]);
        let ls = LinearSystem::six_eleven(&p).unwrap();
        let (sf, report) = analyze(&ls);
        let sf = sf.expect("6-11 systems are solvable");
        prop_assert!(sf.satisfies(&ls));
        prop_assert!(report.kind != ContradictionKind::Residual);
        for f in &report.findings {
            prop_assert!(verify_finding(&ls, Some(&sf), f));
        }
    }
}
