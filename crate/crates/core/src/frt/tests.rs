use std::sync::OnceLock;

use super::*;
use crate::sl2::Sl2Instance;

fn n2() -> &'static FrtInstance {
    static I: OnceLock<FrtInstance> = OnceLock::new();
    I.get_or_init(|| FrtInstance::load(2).unwrap())
}

fn n3() -> &'static FrtInstance {
    static I: OnceLock<FrtInstance> = OnceLock::new();
    I.get_or_init(|| FrtInstance::load(3).unwrap())
}

#[test]
fn generator_count() {
    assert_eq!(n2().gens.len(), 6);
    assert_eq!(n3().gens.len(), 12);
    assert_eq!(n3().cell.len(), 3);
}

#[test]
fn coproduct_and_counit_of_entries() {
    let i = n3();
    let g = &i.gens;
    let d = g.coproduct(&g.named("L+_{11}").unwrap());
    assert_eq!(g.render_tensor(&d), "L+_{11} ⊗ L+_{11}");
    let d = g.coproduct(&g.named("L+_{13}").unwrap());
    assert_eq!(d.len(), 3);
    let d = g.coproduct(&g.named("L-_{31}").unwrap());
    assert_eq!(d.len(), 3);
    for n in g.names() {
        let e = g.counit(&g.named(n).unwrap());
        let diag = n.ends_with("11}") || n.ends_with("22}") || n.ends_with("33}");
        assert_eq!(e.is_one(), diag, "{n}");
        assert_eq!(e.is_zero(), !diag, "{n}");
    }
    let words = Word::all_up_to(g.len() as u16, 2);
    assert!(g.check_coassociativity(&words).all_pass());
}

#[test]
fn certificates_verify() {
    for i in [n2(), n3()] {
        assert!(i.relations.is_certified());
        assert!(i.relations.check_certificates(&i.gens).all_pass());
    }
}

#[test]
fn unipotent_inverse_two_sided() {
    for i in [n2(), n3()] {
        let c = &i.cell;
        let id = NcMatrix::identity(c, i.n);
        assert_eq!(i.zstar.mul(&i.zstar_inv, c).unwrap(), id);
        assert_eq!(i.zstar_inv.mul(&i.zstar, c).unwrap(), id);
    }
    let c = &n2().cell;
    assert_eq!(c.render(n2().zstar_inv.get(1, 0)), "-z*_{12}");
}

#[test]
fn unipotent_inverse_upper_storage() {
    // entries z*_{jk} stored above the diagonal
    let i = n3();
    let c = &i.cell;
    let mut u = NcMatrix::identity(c, 3);
    for (j, k) in [(0, 1), (0, 2), (1, 2)] {
        u.set(j, k, c.named(&z_name(j, k)).unwrap());
    }
    let inv = u.invert_unipotent(c).unwrap();
    assert_eq!(c.render(inv.get(0, 2)), "-z*_{13} + z*_{12} z*_{23}");
    let id = NcMatrix::identity(c, 3);
    assert_eq!(u.mul(&inv, c).unwrap(), id);
    assert_eq!(inv.mul(&u, c).unwrap(), id);
}

#[test]
fn non_unipotent_is_rejected() {
    let c = &n2().cell;
    let mut m = NcMatrix::identity(c, 2);
    m.set(0, 0, c.named("z*_{12}").unwrap());
    assert!(m.invert_unipotent(c).is_err());
}

#[test]
fn cell_rules_at_three() {
    let i = n3();
    let rules: Vec<String> = i
        .cell
        .rules()
        .iter()
        .map(|r| format!("{} -> {}", i.cell.render_word(&r.lhs), i.cell.render(&r.rhs)))
        .collect();
    assert_eq!(
        rules,
        [
            "z*_{13} z*_{12} -> (q)*z*_{12} z*_{13}",
            "z*_{23} z*_{12} -> (1 - q^-2)*z*_{13} + (q^-1)*z*_{12} z*_{23}",
            "z*_{23} z*_{13} -> (q)*z*_{13} z*_{23}",
        ]
    );
    assert!(i.cell.confluence_probe(3).all_pass());
    // commutative-size normal forms: C(d+2, 2)
    for d in 0..=4 {
        assert_eq!(i.cell.normal_words(d).len(), (d + 1) * (d + 2) / 2);
    }
}

#[test]
fn action_matches_defining_formulas() {
    for i in [n2(), n3()] {
        let r = i.check_action_table().unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
        assert!(i.table.check_cell_compatibility(3).unwrap().all_pass());
    }
}

#[test]
fn n2_action_on_the_generator() {
    let i = n2();
    let c = &i.cell;
    let z = c.named("z*_{12}").unwrap();
    let act = |g: &str| c.render(&i.table.act_gen(i.gens.index_of(g).unwrap(), &z).unwrap());
    // worked by hand from R21^-1 = [[q^-1,0,0,0],[0,1,-q+q^-1,0],[0,0,1,0],[0,0,0,q^-1]]
    // at rows (1,2), (2,2), (1,2) and columns (1,1), (2,1), (2,1)
    assert_eq!(act("L+_{11}"), "(q)*z*_{12}");
    assert_eq!(act("L+_{22}"), "(q^-1)*z*_{12}");
    assert_eq!(act("L+_{12}"), "(-q + q^-1)");
}

#[test]
fn quadratic_families() {
    for i in [n2(), n3()] {
        let r = i.verify_eq52().unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }
}

#[test]
fn perturbed_phi_breaks_families() {
    let i = n2();
    let mut bad = i.clone();
    let v = i.cell.constant(Scalar::q_pow(i.ctx(), 1));
    bad.phi = Arc::new(i.phi.with_value("L+_{11}", v).unwrap());
    let r = bad.verify_eq52().unwrap();
    assert!(!r.all_pass());
}

#[test]
fn unit_sees_inverse_diagonal() {
    for i in [n2(), n3()] {
        let t = i.twisted();
        for a in 0..i.n {
            let x = i.generator(Sign::Plus, a, a).unwrap();
            let got = t.extract_phi(&i.gens.generator(x)).unwrap();
            assert_eq!(got, i.cell.constant(i.d.get(a, a).inv().unwrap()));
        }
        // off-diagonal L+ entries kill the unit
        for a in 0..i.n {
            for c in a + 1..i.n {
                let x = i.generator(Sign::Plus, a, c).unwrap();
                assert!(t.extract_phi(&i.gens.generator(x)).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn orthogonality_is_vacuous() {
    assert!(n3().check_orthogonality().unwrap().all_pass());
    assert!(n3().structure.k.is_zero());
}

#[test]
fn weight_dictionary() {
    assert_eq!(FrtInstance::weight_exponents(2, &[1]).unwrap(), vec![1, -1]);
    assert_eq!(FrtInstance::weight_exponents(3, &[1, 0]).unwrap(), vec![4, -2, -2]);
    assert_eq!(FrtInstance::weight_exponents(3, &[0, 1]).unwrap(), vec![2, 2, -4]);
    assert!(FrtInstance::weight_exponents(3, &[1]).is_err());
}

#[test]
fn small_modules() {
    let i = n2();
    let m = i.build_rep(&[0], 16).unwrap().finite().unwrap();
    assert_eq!(m.dim(), 1);
    for (a, c) in [(0, 1)] {
        let x = i.generator(Sign::Plus, a, c).unwrap();
        assert!(m.matrices()[x as usize].is_zero());
        let y = i.generator(Sign::Minus, c, a).unwrap();
        assert!(m.matrices()[y as usize].is_zero());
    }
    for (w, dim) in [(1, 2), (2, 3), (3, 4)] {
        let r = i.verify_rep(&[w], 16, Some(dim)).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }
    for (w, dim) in [([1, 0], 3), ([0, 1], 3), ([1, 1], 8), ([2, 0], 6)] {
        let r = n3().verify_rep(&w, 32, Some(dim)).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }
}

#[test]
fn agrees_with_sl2() {
    let s = Sl2Instance::load().unwrap();
    for sigma in 0..=3 {
        let r = cross_check_sl2(n2(), &s, sigma, 16).unwrap();
        assert!(r.all_pass(), "{}", r.to_json());
    }
}

#[test]
fn twisted_module_law_on_low_degree() {
    let i = n3();
    let t = i.twisted();
    let c = &i.cell;
    let z12 = c.named("z*_{12}").unwrap();
    let z23 = c.named("z*_{23}").unwrap();
    let probes = vec![c.one(), z12.clone(), z23.clone(), c.mul(&z23, &z12).unwrap()];
    let g = |n: &str| Word::letter(i.gens.index_of(n).unwrap());
    let samples = vec![
        (g("L-_{21}"), g("L+_{12}"), z23.clone()),
        (g("L+_{23}"), g("L-_{32}"), z12.clone()),
        (g("L-_{31}"), g("L+_{11}"), c.mul(&z12, &z23).unwrap()),
    ];
    let r = t.check_twisted_module_law(&samples, &i.relations, &probes).unwrap();
    assert!(r.all_pass(), "{}", r.to_json());
}
