use super::*;
use crate::scalar::ParameterContext;

fn ctx() -> Ctx {
    ParameterContext::new(&[]).unwrap()
}

/// `b a = q a b` on two generators
fn qplane() -> CellAlgebra {
    let c = ctx();
    let rule = RewriteRule {
        lhs: Word::from_slice(&[1, 0]),
        rhs: CPoly::word(Word::from_slice(&[0, 1]), Scalar::q_pow(&c, 1)),
    };
    CellAlgebra::new(&c, &["a", "b"], vec![rule]).unwrap()
}

#[test]
fn single_generator_is_commutative_and_confluent() {
    let c = ctx();
    let cell = CellAlgebra::new(&c, &["zb"], vec![]).unwrap();
    let z = cell.named("zb").unwrap();
    assert_eq!(cell.render(&cell.mul(&z, &z).unwrap()), "zb^2");
    assert_eq!(cell.normalize_word(&Word::empty()).unwrap(), cell.one());
    assert!(cell.confluence_probe(3).all_pass());
}

#[test]
fn qplane_normal_form() {
    let cell = qplane();
    let x = cell.parse("b b a").unwrap();
    assert_eq!(cell.render(&x), "(q^2)*a b^2");
    assert_eq!(cell.normalize(&x).unwrap(), x);
    assert!(cell.confluence_probe(4).all_pass());
    assert_eq!(cell.normal_words(3).len(), 4);
}

#[test]
fn corrupted_rules_are_detected() {
    let c = ctx();
    let one = Scalar::one(&c);
    // b b -> a and b a -> q a b: the overlap b b a yields a^2 and q^2 a^2
    let rules = vec![
        RewriteRule { lhs: Word::from_slice(&[1, 1]), rhs: CPoly::word(Word::from_slice(&[0]), one) },
        RewriteRule {
            lhs: Word::from_slice(&[1, 0]),
            rhs: CPoly::word(Word::from_slice(&[0, 1]), Scalar::q_pow(&c, 1)),
        },
    ];
    let cell = CellAlgebra::new(&c, &["a", "b"], rules).unwrap();
    let r = cell.confluence_probe(3);
    assert!(!r.all_pass());
    assert!(r.checks[0].witness.as_ref().unwrap().contains("b^2 a"));
}

#[test]
fn non_decreasing_rule_is_rejected() {
    let c = ctx();
    let rule = RewriteRule {
        lhs: Word::from_slice(&[0, 1]),
        rhs: CPoly::word(Word::from_slice(&[1, 0]), Scalar::one(&c)),
    };
    assert!(matches!(CellAlgebra::new(&c, &["a", "b"], vec![rule]), Err(Error::Load(_))));
}

#[test]
fn rules_from_relations() {
    let c = ctx();
    let raw = crate::free::text::parse_comb(&c, "b a - (q)*a b", |names| {
        Ok(Word::from_slice(&names.iter().map(|n| if *n == "a" { 0 } else { 1 }).collect::<Vec<_>>()))
    })
    .unwrap();
    let cell = CellAlgebra::from_relations(&c, &["a", "b"], &[raw]).unwrap();
    assert_eq!(cell.rules(), qplane().rules());
    let bad = crate::free::text::parse_comb(&c, "a - 1", |_| Ok(Word::letter(0))).unwrap();
    assert!(matches!(
        CellAlgebra::from_relations(&c, &["a", "b"], &[bad]),
        Err(Error::NoLeadingTerm(_))
    ));
}

#[test]
fn definition_round_trip() {
    let cell = qplane();
    let def = CellDefinition::from_cell(&cell);
    let text = serde_json::to_string(&def).unwrap();
    let back: CellDefinition = serde_json::from_str(&text).unwrap();
    let cell2 = back.to_cell().unwrap();
    assert_eq!(cell2.rules(), cell.rules());
    assert_eq!(serde_json::to_string(&CellDefinition::from_cell(&cell2)).unwrap(), text);
}
