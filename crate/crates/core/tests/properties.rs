mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use shellkit::complex::{Complex, RelativeComplex};
use shellkit::format::{parse_complex, write_complex};
use shellkit::homology::{betti, relative_betti};
use shellkit::reduction::{normalize, parse_dimacs, CnfInstance};
use shellkit::search::{find_shelling, SearchOptions, Verdict};
use shellkit::shelling::{check_shelling, check_shelling_eq1, rename_shelling};

fn triangles(n: usize) -> Vec<[usize; 3]> {
    common::subsets(n, 3).into_iter().map(|s| [s[0], s[1], s[2]]).collect()
}

fn complex_of(tris: &[[usize; 3]]) -> Complex {
    Complex::from_facets(tris.iter().map(|t| t.iter().map(|v| format!("v{v}")))).unwrap()
}

/// A pure 2-complex on 6 vertices with 1 to 7 facets, listed in a random order.
fn arb_ordered_complex() -> impl Strategy<Value = Vec<[usize; 3]>> {
    proptest::sample::subsequence(triangles(6), 1..=7).prop_shuffle()
}

fn alternating(b: &[usize]) -> i64 {
    b.iter().enumerate().map(|(i, x)| if i % 2 == 0 { *x as i64 } else { -(*x as i64) }).sum()
}

fn arb_cnf() -> impl Strategy<Value = CnfInstance> {
    (1usize..=4).prop_flat_map(|nv| {
        let lit = (1..=nv as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        proptest::collection::vec(proptest::collection::vec(lit, 1..=3), 0..=6)
            .prop_map(move |clauses| CnfInstance::new(nv, clauses))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn checker_agrees_with_pairwise_condition(order in arb_ordered_complex()) {
        let c = complex_of(&order);
        let faces: Vec<_> = order.iter().map(|t| c.face(&t.map(|v| format!("v{v}"))).unwrap()).collect();
        let ours = check_shelling(&RelativeComplex::absolute(c.clone()), &faces);
        prop_assert_eq!(ours.is_ok(), check_shelling_eq1(&c, &faces).unwrap());
        if let Ok(s) = ours {
            prop_assert_eq!(s.homology_facets().len() as i64, c.h_vector().0[3]);
        }
    }

    #[test]
    fn renaming_preserves_verdicts(order in arb_ordered_complex()) {
        let c = complex_of(&order);
        let rc = RelativeComplex::absolute(c.clone());
        let faces: Vec<_> = order.iter().map(|t| c.face(&t.map(|v| format!("v{v}"))).unwrap()).collect();
        if let Ok(s) = check_shelling(&rc, &faces) {
            let map: HashMap<String, String> =
                c.vertices().iter().map(|v| (v.clone(), format!("{v}'"))).collect();
            let r = rename_shelling(&s, &map).unwrap();
            prop_assert_eq!(r.homology_facets().len(), s.homology_facets().len());
        }
    }

    #[test]
    fn euler_poincare(tris in proptest::sample::subsequence(triangles(6), 1..=10)) {
        let c = complex_of(&tris);
        let b = betti(&c);
        prop_assert_eq!(alternating(&b.betti), c.euler_characteristic() - 1);
    }

    #[test]
    fn relative_euler_poincare(
        tris in proptest::sample::subsequence(triangles(6), 2..=8),
        keep in proptest::collection::vec(any::<bool>(), 30),
    ) {
        let c = complex_of(&tris);
        let edges: Vec<Vec<String>> = c
            .sorted_faces()
            .into_iter()
            .filter(|f| f.len() == 2)
            .map(|f| c.owned_names(&f))
            .collect();
        let kept: Vec<&Vec<String>> = edges.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| e).collect();
        prop_assume!(!kept.is_empty());
        let g = Complex::from_facets(kept.iter().map(|e| e.iter().map(String::as_str))).unwrap();
        let rc = RelativeComplex::new(c, g).unwrap();
        let b = relative_betti(&rc).unwrap();
        prop_assert_eq!(alternating(&b.betti), rc.reduced_euler_characteristic());
    }

    #[test]
    fn complex_file_round_trip(
        tris in proptest::sample::subsequence(triangles(6), 1..=8),
        with_gamma in any::<bool>(),
    ) {
        let c = complex_of(&tris);
        let g = if with_gamma {
            Complex::from_facets([c.owned_names(&c.facets()[0])[..2].to_vec()]).unwrap()
        } else {
            Complex::void()
        };
        let rc = RelativeComplex::new(c, g).unwrap();
        let text = write_complex(&rc, &["round trip".into()]);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&back, &rc);
        prop_assert_eq!(write_complex(&back, &["round trip".into()]), text);
    }

    #[test]
    fn search_verdict_matches_brute_force(tris in proptest::sample::subsequence(triangles(5), 1..=6)) {
        let c = complex_of(&tris);
        let rc = RelativeComplex::absolute(c.clone());
        let facets = c.facets().to_vec();
        let mut any = false;
        common::for_each_permutation(facets.len(), |p| {
            if !any {
                let order: Vec<_> = p.iter().map(|&i| facets[i].clone()).collect();
                any = check_shelling(&rc, &order).is_ok();
            }
        });
        let serial = find_shelling(&rc, &SearchOptions::default()).unwrap();
        let parallel = find_shelling(&rc, &SearchOptions { parallel: true, ..SearchOptions::default() }).unwrap();
        prop_assert_eq!(serial.verdict.is_shellable(), any);
        prop_assert_eq!(parallel.verdict.is_shellable(), any);
        prop_assert!(!matches!(serial.verdict, Verdict::BudgetExhausted));
    }

    #[test]
    fn normalize_is_equisatisfiable(inst in arb_cnf()) {
        let n = normalize(&inst).unwrap();
        prop_assert!(n.validate_strict().is_ok());
        prop_assert_eq!(inst.brute_force().is_some(), n.brute_force().is_some());
    }

    #[test]
    fn dimacs_round_trip(inst in arb_cnf()) {
        prop_assert_eq!(parse_dimacs(&inst.to_dimacs()).unwrap(), inst);
    }
}
