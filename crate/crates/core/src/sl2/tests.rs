use super::*;
use crate::word::Word;

#[test]
fn loads_with_certificates() {
    let i = Sl2Instance::load().unwrap();
    assert!(i.relations.is_certified());
    assert_eq!(i.relations.relations().len(), 7);
}

#[test]
fn generator_values() {
    let i = Sl2Instance::load().unwrap();
    let ctx = i.gens.ctx();
    let s = Scalar::var(ctx, "s").unwrap();
    assert_eq!(i.phi.value(0), &i.cell.constant(s.inv().unwrap()));
    assert!(i.phi.value(3).is_zero());
    assert!(i.gens.counit_of(2).is_zero());
}

#[test]
fn base_action_table() {
    let i = Sl2Instance::load().unwrap();
    let ctx = i.gens.ctx();
    let xp = i.gens.word(X_PLUS).unwrap();
    let k = i.gens.word(K).unwrap();
    let xm = i.gens.word(X_MINUS).unwrap();
    assert_eq!(i.table.act_word(&xp, &i.zb_pow(1).unwrap()).unwrap(), i.zb_pow(2).unwrap());
    assert_eq!(
        i.table.act_word(&k, &i.zb_pow(3).unwrap()).unwrap(),
        i.zb_pow(3).unwrap().scale(&Scalar::q_pow(ctx, 3))
    );
    assert!(i.table.act_word(&xm, &i.cell.one()).unwrap().is_zero());
    for n in 0..6 {
        let got = i.table.act_word(&xp, &i.zb_pow(n).unwrap()).unwrap();
        assert_eq!(got, i.zb_pow(n + 1).unwrap().scale(&Scalar::qnum(ctx, n as i64)));
    }
}

#[test]
fn closed_forms_hold() {
    let i = Sl2Instance::load().unwrap();
    let r = i.verify_closed_forms(8).unwrap();
    assert!(r.all_pass(), "{}", r.to_json());
    for sigma in [0, 1, 3] {
        assert!(i.verify_closed_forms_at(Some(sigma), 6).unwrap().all_pass());
    }
}

#[test]
fn relations_kill_base_action() {
    let i = Sl2Instance::load().unwrap();
    let probes: Vec<_> = (0..=5).map(|n| i.zb_pow(n).unwrap()).collect();
    let r = i.table.check_relations_kill(i.relations.relations(), &probes).unwrap();
    assert!(r.all_pass());
}

#[test]
fn reps_for_small_sigma() {
    let i = Sl2Instance::load().unwrap();
    for sigma in 0..=4 {
        let r = i.verify_rep(sigma, 64).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }
}

#[test]
fn module_law_of_base_action() {
    let i = Sl2Instance::load().unwrap();
    let words = Word::all_up_to(4, 2);
    let mut samples = Vec::new();
    for x in &words {
        for y in &words {
            samples.push((x.clone(), y.clone(), i.zb_pow(3).unwrap()));
        }
    }
    assert!(i.table.check_module_law(&samples).unwrap().all_pass());
}
