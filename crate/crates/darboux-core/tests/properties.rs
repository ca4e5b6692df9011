mod common;

use darboux::airy::AiryParam;
use darboux::bessel::BesselParam;
use darboux::io::{self, Document};
use darboux::kernel::{Condition, ConditionSet, PointCondition, PointForm};
use darboux::pipeline::{build_plane, complete_pair, mu_n_of, one_point_law};
use darboux::verify::{check_bispectral_symbolic, check_factorizations};
use darboux::{Family, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Scalar::frac(p, q))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |s| !s.is_zero())
}

fn one_point(fam: Family, pc: PointCondition) -> darboux::pipeline::DarbouxPlane {
    build_plane(&ConditionSet::new(fam, vec![Condition::Point(pc)]).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn airy_one_point_pairs(n in 2u32..=3, a0 in nonzero(), a in nonzero(), lam in rational(), al2 in rational()) {
        let rest = if n == 3 { vec![al2] } else { vec![] };
        let ap = AiryParam::new(n, a0, rest).unwrap();
        let mu_n = &ap.p_alpha_prime().eval(&-&a.inv()) - &lam.pow(n);
        prop_assume!(!mu_n.is_zero());
        let plane = one_point(Family::Airy(ap), PointCondition::new(lam, vec![Scalar::one(), a]));
        let law = one_point_law(&plane).unwrap().unwrap();
        prop_assert!(law.holds());
        prop_assert_eq!(&law.mu_n, &mu_n);
        let pair = complete_pair(&plane).unwrap();
        prop_assert_eq!(mu_n_of(&pair.g_b, n as usize), Some(mu_n));
        prop_assert!(check_factorizations(&pair).is_ok());
        prop_assert!(check_bispectral_symbolic(&pair).is_ok());
    }

    #[test]
    fn bessel_euler_one_point_pairs(which in 0usize..3, a in nonzero(), lam in nonzero()) {
        let betas: [&[(i64, i64)]; 3] = [&[(2, 3), (1, 3)], &[(5, 4), (-1, 4)], &[(1, 5), (2, 7), (88, 35)]];
        let bp = BesselParam::from_ratios(betas[which]).unwrap();
        let n = bp.n();
        let rhs = bp.p_beta().eval(&-&a.inv());
        prop_assume!(!rhs.is_zero());
        // 1 + (N − 1)a = 0 puts the dual coefficient at infinity
        prop_assume!(!(&Scalar::one() + &(&a * &Scalar::int(n as i64 - 1))).is_zero());
        let jet = PointCondition::new(lam.clone(), vec![Scalar::one(), a]).with_form(PointForm::Euler);
        let plane = one_point(Family::Bessel(bp), jet);
        let law = one_point_law(&plane).unwrap().unwrap();
        prop_assert!(law.holds(), "{:?}", law);
        prop_assert_eq!(&law.lambda_n * &law.mu_n, rhs);
        let pair = complete_pair(&plane).unwrap();
        prop_assert!(check_bispectral_symbolic(&pair).is_ok());
    }

    #[test]
    fn monomial_closed_forms_agree(seed in any::<u64>()) {
        let case = common::monomial_corpus(seed, 1).remove(0);
        prop_assert_eq!(common::compare_closed_forms(&case), Ok(()));
    }

    #[test]
    fn conditions_json_round_trip(seed in any::<u64>(), lam in rational(), a in rational()) {
        let case = common::monomial_corpus(seed, 1).remove(0);
        let cs = case.plane().conditions.unwrap();
        let doc = io::to_json(&io::conditions_doc(&cs).unwrap());
        let Document::Conditions(back) = io::parse_document(&doc).unwrap() else { panic!() };
        prop_assert_eq!(&back, &cs);
        prop_assert_eq!(io::to_json(&io::conditions_doc(&back).unwrap()), doc);

        let ap = AiryParam::new(2, Scalar::one(), vec![]).unwrap();
        let cs = ConditionSet::new(Family::Airy(ap), vec![Condition::Point(PointCondition::new(lam, vec![Scalar::one(), a]))]).unwrap();
        let doc = io::to_json(&io::conditions_doc(&cs).unwrap());
        let Document::Conditions(back) = io::parse_document(&doc).unwrap() else { panic!() };
        prop_assert_eq!(back, cs);
    }
}
