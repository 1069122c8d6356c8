use super::*;
use crate::sl2::{Sl2Instance, K, K_INV, X_MINUS, X_PLUS};

fn sl2() -> Sl2Instance {
    Sl2Instance::load().unwrap()
}

#[test]
fn phi_of_unit_is_one() {
    let i = sl2();
    assert_eq!(i.phi.extend_phi(&Word::empty()).unwrap(), i.cell.one());
}

#[test]
fn phi_of_x_plus_squared() {
    let i = sl2();
    let ctx = i.gens.ctx().clone();
    let w = i.gens.word("X+ X+").unwrap();
    let got = i.phi.extend_phi(&w).unwrap();
    // -[σ] zb² + q s⁻² [σ]² zb², with [σ] = (s² - s⁻²)/(q - q⁻¹)
    let s = Scalar::var(&ctx, "s").unwrap();
    let s2 = s.pow(2).unwrap();
    let bracket = (&s2 - &s2.inv().unwrap()).try_div(&Scalar::q_diff(&ctx)).unwrap();
    let coeff = &(-&bracket) + &(&(&Scalar::q_pow(&ctx, 1) * &s2.inv().unwrap()) * &(&bracket * &bracket));
    assert_eq!(got, i.zb_pow(2).unwrap().scale(&coeff));
    // vanishes at σ = 1
    let at1 = i.phi_at(1).unwrap();
    assert!(at1.extend_phi(&w).unwrap().is_zero());
}

#[test]
fn extension_is_independent_of_split() {
    let i = sl2();
    assert!(i.phi.check_well_defined(4).unwrap().all_pass());
}

#[test]
fn relation_check_requires_certificate() {
    let i = sl2();
    let bare = RelationSet::uncertified(i.relations.relations().to_vec());
    assert!(matches!(check_phi_relations(&i.phi, &bare), Err(Error::CertificateRequired)));
    assert!(check_phi_relations(&i.phi, &i.relations).unwrap().all_pass());
    assert!(i.relations.check_certificates(&i.gens).all_pass());
}

#[test]
fn perturbed_phi_fails() {
    let i = sl2();
    let bad = i.phi.with_value(X_MINUS, i.cell.named("zb").unwrap()).unwrap();
    let r = check_phi_relations(&bad, &i.relations).unwrap();
    assert!(!r.all_pass());
}

#[test]
fn unit_recovers_phi_and_lowering_kills_one() {
    let i = sl2();
    let act = i.twisted();
    assert!(act.check_unit_values(3).unwrap().all_pass());
    let xm = i.gens.named(X_MINUS).unwrap();
    assert!(act.act(&xm, &i.cell.one()).unwrap().is_zero());
}

#[test]
fn twisted_module_law_and_relations() {
    let i = sl2();
    let act = i.twisted_at(1).unwrap();
    let xp = i.gens.word(X_PLUS).unwrap();
    let k = i.gens.word(K).unwrap();
    let ki = i.gens.word(K_INV).unwrap();
    let probes: Vec<CPoly> = (0..=4).map(|n| i.zb_pow(n).unwrap()).collect();
    let samples = vec![
        (xp.clone(), xp.clone(), i.cell.one()),
        (k.clone(), ki.clone(), i.zb_pow(3).unwrap()),
    ];
    let r = act.check_twisted_module_law(&samples, &i.relations, &probes).unwrap();
    assert!(r.all_pass(), "{}", r.to_json());
    // x = y = X+, f = 1 at σ = 1: both sides vanish
    assert!(act.act_word(&xp.concat(&xp), &i.cell.one()).unwrap().is_zero());
    assert_eq!(act.act_word(&k.concat(&ki), &probes[3]).unwrap(), probes[3]);
}

#[test]
fn generalized_leibniz_sample() {
    let i = sl2();
    let act = i.twisted_at(2).unwrap();
    let z = i.cell.named("zb").unwrap();
    let xp = i.gens.word(X_PLUS).unwrap();
    let r = act
        .check_generalized_leibniz(&[(xp, z.clone(), z.clone()), (Word::empty(), z.clone(), z)])
        .unwrap();
    assert!(r.all_pass());
}

#[test]
fn trivial_character_is_base_action() {
    let i = sl2();
    let samples: Vec<(Word, CPoly)> = Word::all_up_to(4, 2)
        .into_iter()
        .map(|w| (w, i.zb_pow(2).unwrap()))
        .collect();
    assert!(check_trivial_character(i.table.clone(), &samples).unwrap().all_pass());
}

#[test]
fn cyclic_dimensions() {
    let i = sl2();
    for sigma in 0..=3 {
        let m = i.build_rep(sigma, 64).unwrap().finite().unwrap();
        assert_eq!(m.dim() as i64, sigma + 1);
    }
    let m = i.build_rep(1, 64).unwrap().finite().unwrap();
    assert_eq!(m.basis_labels(), vec!["1", "zb"]);
    let k = m.matrix(K).unwrap();
    let ctx = i.gens.ctx();
    assert!(k.is_diagonal());
    assert_eq!(k.diagonal(), vec![Scalar::v_pow(ctx, -1), Scalar::v_pow(ctx, 1)]);
}

#[test]
fn cutoff_flags_large_modules() {
    let i = sl2();
    let c = i.build_rep(10, 6).unwrap();
    assert!(matches!(c, Closure::Infinite { .. }));
    // formal σ cannot be row reduced over the coefficient field
    assert!(build_cyclic_submodule(&i.twisted(), 6).is_err());
}
