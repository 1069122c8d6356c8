use std::sync::OnceLock;

use proptest::prelude::*;

use qorbit::adjoint::{AdjointInstance, CartanData};
use qorbit::archive::{Descriptor, RepArchive};
use qorbit::cell::CPoly;
use qorbit::free::FreeElement;
use qorbit::instance::Instance;
use qorbit::scalar::Scalar;
use qorbit::sl2::Sl2Instance;
use qorbit::word::Word;

/// Raw material for a word: letter choices reduced modulo the alphabet.
fn raw_word() -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(any::<u16>(), 0..=2)
}

/// Raw material for an element: (degree, word choice, coefficient).
fn raw_element() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..=2, any::<usize>(), -3i64..=3), 1..=2)
}

fn word(inst: &Instance, raw: &[u16]) -> Word {
    let n = inst.gens().len() as u16;
    Word::from_slice(&raw.iter().map(|x| x % n).collect::<Vec<_>>())
}

fn element(inst: &Instance, raw: &[(usize, usize, i64)]) -> CPoly {
    let cell = inst.cell();
    let mut out = CPoly::zero();
    for &(d, pick, c) in raw {
        let words = cell.normal_words(d);
        out.add_term(words[pick % words.len()].clone(), Scalar::integer(cell.ctx(), c));
    }
    out
}

fn instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            Instance::sl2().unwrap(),
            Instance::frt(2).unwrap(),
            Instance::adjoint("A1").unwrap(),
            Instance::adjoint("A2").unwrap(),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisted_module_law(pick in 0usize..4, x in raw_word(), y in raw_word(), f in raw_element()) {
        let inst = &instances()[pick];
        let (x, y, f) = (word(inst, &x), word(inst, &y), element(inst, &f));
        let act = inst.twisted();
        let lhs = act.act_word(&x, &act.act_word(&y, &f).unwrap()).unwrap();
        let rhs = act.act_word(&x.concat(&y), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generalized_leibniz(pick in 0usize..4, x in raw_word(), f in raw_element(), g in raw_element()) {
        let inst = &instances()[pick];
        let sample = [(word(inst, &x), element(inst, &f), element(inst, &g))];
        let r = inst.twisted().check_generalized_leibniz(&sample).unwrap();
        prop_assert!(r.all_pass(), "{}", r.to_json());
    }

    #[test]
    fn unit_recovers_phi(pick in 0usize..4, x in prop::collection::vec(any::<u16>(), 0..=3)) {
        let inst = &instances()[pick];
        let w = FreeElement::word(word(inst, &x), Scalar::one(inst.gens().ctx()));
        let act = inst.twisted();
        prop_assert_eq!(act.extract_phi(&w).unwrap(), inst.phi().extend(&w).unwrap());
    }

    #[test]
    fn relations_act_as_zero(pick in 0usize..4, f in raw_element()) {
        let inst = &instances()[pick];
        let f = element(inst, &f);
        let act = inst.twisted();
        for r in inst.relations().relations() {
            prop_assert!(act.act(r, &f).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn archive_round_trip(sigma in 0i64..6) {
        let s = Sl2Instance::load().unwrap();
        let m = s.build_rep(sigma, 16).unwrap().finite().unwrap();
        let a = RepArchive::from_module(Descriptor::new("sl2", &[("sigma", sigma.to_string())]), &m);
        let text = a.to_json();
        let b = RepArchive::parse(&text).unwrap();
        prop_assert_eq!(b.to_json(), text);
        prop_assert_eq!(b.dim() as i64, sigma + 1);
    }

    #[test]
    fn a1_dimension_is_m_plus_one(m in 0i64..6) {
        let a = AdjointInstance::load(CartanData::a1()).unwrap();
        let module = a.build_rep(&[-m], 64).unwrap().finite().unwrap();
        prop_assert_eq!(module.dim() as i64, m + 1);
    }

    #[test]
    fn a2_dimension_is_weyl(m1 in 0u64..3, m2 in 0u64..2) {
        let a = AdjointInstance::load(CartanData::a2()).unwrap();
        let module = a.build_rep(&[-(m1 as i64), -(m2 as i64)], 64).unwrap().finite().unwrap();
        // positive roots α1, α2, α1+α2 with ρ-shifted pairings
        let want = (m1 + 1) * (m2 + 1) * (m1 + m2 + 2) / 2;
        prop_assert_eq!(module.dim() as u64, want);
    }
}
