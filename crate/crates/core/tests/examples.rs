//! Worked examples on the catalog arrangements.

use vgalg::arrangement::{chambers, lattice_isomorphism, poly_from_roots, Arrangement, SignVector};
use vgalg::catalog;
use vgalg::compare::{compare, CompareWhat};
use vgalg::exactla::{Field, PrimeField, Rationals};
use vgalg::omatroid::{
    circuits_equivalent, graph_automorphism_order, graph_isomorphic, partial_cube_check, signed_circuits, tope_graph,
    tope_graph_necessary_check, Graph,
};
use vgalg::reconstruct::{
    aut_groups, check_circuits, circuit_relation, conjecture_harness_filtered, detect_circuits_from_products,
    generalized_tope_graph, recover_and_compare, recover_tope_graph_from_heav, GToGraphChoice, HarnessMode,
};
use vgalg::vgalgebra::{Side, VgAlgebra, VgElement};
use vgalg::{Error, ErrorKind};

fn entry(name: &str) -> Arrangement {
    catalog::load(name).unwrap().arrangement
}

fn q(a: &Arrangement) -> VgAlgebra<Rationals> {
    VgAlgebra::new(a, Rationals, false).unwrap()
}

fn mask(s: &[usize]) -> u32 {
    s.iter().fold(0, |m, &i| m | 1 << i)
}

/// `y_1, …, y_4` on A3 from the catalog formulas.
fn a3_alt(vg: &VgAlgebra<Rationals>) -> Vec<VgElement<Rationals>> {
    let table = catalog::load("a3").unwrap().product_table.unwrap();
    table
        .formulas
        .iter()
        .map(|(_, c0, c)| {
            let c: Vec<_> = c.iter().map(|&v| Rationals.from_i64(v)).collect();
            vg.linear(&Rationals.from_i64(*c0), &c)
        })
        .collect()
}

#[test]
fn circuits_of_small_arrangements() {
    let abc = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let c = signed_circuits(&abc);
    assert_eq!(c.len(), 2);
    assert!(c.contains(&SignVector::parse("++-").unwrap()));
    assert!(signed_circuits(&entry("b2")).is_empty());

    let mut sizes: Vec<u32> = signed_circuits(&entry("a3")).supports().iter().map(|s| s.count_ones()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [3, 3, 3, 3, 4, 4, 4]);
}

#[test]
fn circuit_equivalence() {
    let c = signed_circuits(&entry("a3"));
    let e = circuits_equivalent(&c, &c).unwrap();
    assert_eq!(e.permutation, (0..6).collect::<Vec<_>>());
    assert!(e.reorientation.iter().all(|&f| !f));

    let mut flip = vec![false; 6];
    flip[0] = true;
    let e = circuits_equivalent(&c, &c.reorient(&flip)).unwrap();
    assert_eq!(c.permute(&e.permutation).reorient(&e.reorientation), c.reorient(&flip));

    let a = signed_circuits(&entry("generic6a"));
    let b = signed_circuits(&entry("generic6b"));
    assert!(circuits_equivalent(&a, &b).is_none());
}

#[test]
fn graphs_and_partial_cubes() {
    let c6 = Graph::cycle(6);
    assert!(graph_isomorphic(&c6, &Graph::cycle(6)).is_some());
    assert_eq!(graph_automorphism_order(&c6), 12u32.into());
    assert_eq!(graph_automorphism_order(&Graph::complete(2)), 2u32.into());
    assert_eq!(partial_cube_check(&c6).unwrap().dimension(), 3);
    assert!(partial_cube_check(&Graph::complete(3)).is_none());
    assert!(tope_graph_necessary_check(&c6, 3, 2).pass());

    for e in catalog::all().unwrap() {
        let a = &e.arrangement;
        let t = tope_graph(&chambers(a));
        assert_eq!(partial_cube_check(&t).unwrap().dimension(), a.n(), "{}", e.name);
        assert!(tope_graph_necessary_check(&t, a.n(), a.rank()).pass(), "{}", e.name);
    }
}

#[test]
fn pencil_tope_graph_is_a_hexagon() {
    let t = tope_graph(&chambers(&entry("pencil3")));
    assert!(graph_isomorphic(&t, &Graph::cycle(6)).is_some());
}

#[test]
fn a3_lattice_and_tope_graph() {
    let vg = q(&entry("a3"));
    assert_eq!(vg.dim(), 24);
    assert_eq!(vg.lattice().char_poly(), poly_from_roots(&[1, 2, 3], 0));
    assert_eq!(vg.fil().dims(), [1, 7, 18, 24]);
    assert!(!vg.lattice().is_generic_codim2());
    assert_eq!(vg.lattice().codim2_flats().iter().filter(|x| x.size() == 3).count(), 4);
    let t = tope_graph(vg.chambers());
    assert_eq!(t.degrees().into_iter().min(), Some(3));
}

#[test]
fn falk_pair_shares_its_characteristic_polynomial() {
    let a = entry("falk-a");
    let b = entry("falk-b");
    let (la, lb) = (q(&a), q(&b));
    assert_eq!(la.lattice().char_poly(), poly_from_roots(&[1, 2, 3], 0));
    assert_eq!(lb.lattice().char_poly(), la.lattice().char_poly());
    assert!(lattice_isomorphism(la.lattice(), lb.lattice()).is_none());
}

#[test]
fn pencil_generalized_heavisides() {
    let vg = q(&entry("pencil3"));
    let g = vg.gheav_bruteforce();
    assert_eq!(g.len(), 8);
    let y: Vec<_> = g.iter().filter(|h| !h.is_heaviside()).collect();
    assert_eq!(y.len(), 2);
    assert!(y.iter().all(|h| h.support == [0, 1, 2]));

    let flat = vg.lattice().codim2_flats()[0].clone();
    let (plus, minus) = vg.alt_function(&flat, 0b111).unwrap();
    assert_eq!(plus.complement(vg.field()), minus);
    assert!(y.iter().any(|h| h.indicator == plus.indicator));
    let single = vg.alt_function(&flat, 0b010).unwrap().0;
    assert!(single.is_heaviside());

    let e = y[0].element(&vg);
    assert_eq!(vg.support(&e).unwrap(), [0, 1, 2]);
    assert!(vg.support(&vg.one()).unwrap().is_empty());
    assert!(vg.support(&vg.indicator(0)).is_err());
}

#[test]
fn a3_generalized_heavisides() {
    let vg = q(&entry("a3"));
    let g = vg.gheav_bruteforce();
    assert_eq!(g.len(), 20);
    assert_eq!(g.iter().filter(|h| h.is_heaviside()).count(), 12);
    for y in a3_alt(&vg) {
        assert!(g.iter().any(|h| h.element(&vg) == y));
    }
    let b2 = q(&entry("b2")).gheav_bruteforce();
    assert!(b2.len() == 4 && b2.iter().all(|h| h.is_heaviside()));
}

#[test]
fn a3_generalized_tope_graphs() {
    let vg = q(&entry("a3"));
    let x = |i: usize| vg.heaviside(i, Side::Plus);
    let y = a3_alt(&vg);
    let tope = tope_graph(vg.chambers());
    let gtope = |elements: Vec<VgElement<Rationals>>| {
        let choice = GToGraphChoice::from_elements(&vg, &elements).unwrap();
        assert!(choice.is_basis);
        generalized_tope_graph(&vg, &choice)
    };

    let good = gtope(vec![x(0), x(2), x(4), y[0].clone(), y[1].clone(), y[2].clone()]);
    assert!(tope_graph_necessary_check(&good, 6, 3).pass());
    assert!(graph_isomorphic(&good, &tope).is_some());

    for bad in [
        vec![y[0].clone(), x(1), x(2), x(3), x(4), x(5)],
        vec![x(0), x(1), x(3), y[0].clone(), y[1].clone(), y[2].clone()],
    ] {
        let g = gtope(bad);
        assert!(g.degrees().contains(&2));
        let check = tope_graph_necessary_check(&g, 6, 3);
        assert!(!check.pass());
        assert!(!check.min_degree_ok && check.min_degree <= 2);
    }
}

#[test]
fn filtered_harness_on_a3_uses_non_heaviside_choices() {
    let vg = q(&entry("a3"));
    let r = conjecture_harness_filtered(&vg, HarnessMode::Exhaustive).unwrap();
    assert!(r.is_complete() && r.consistent());
    assert!(r.passing_non_heaviside >= 1);
}

#[test]
fn pencil_filtered_harness_yields_hexagons() {
    let vg = q(&entry("pencil3"));
    let r = conjecture_harness_filtered(&vg, HarnessMode::Exhaustive).unwrap();
    assert!(r.consistent());
    assert_eq!(r.passing, r.matching);
    assert!(r.matching > 0);
}

#[test]
fn tope_graph_recovery() {
    for name in ["b2", "generic6a", "generic6b"] {
        let vg = q(&entry(name));
        let g = recover_tope_graph_from_heav(&vg).unwrap();
        assert!(graph_isomorphic(&g, &tope_graph(vg.chambers())).is_some(), "{name}");
    }
    let sixes = recover_tope_graph_from_heav(&q(&entry("generic6a"))).unwrap();
    assert_eq!(sixes.degrees().iter().filter(|&&d| d == 6).count(), 2);

    let err = recover_tope_graph_from_heav(&q(&entry("pencil3"))).unwrap_err();
    assert!(matches!(err, Error::NotCodim2Generic));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn automorphism_orders() {
    let pencil = aut_groups(&q(&entry("pencil3")));
    assert_eq!((pencil.graph.clone(), pencil.filtered.clone()), (12u32.into(), 48u32.into()));
    assert!(pencil.chain_holds());
    let b2 = aut_groups(&q(&entry("b2")));
    assert!(b2.graph == 8u32.into() && b2.filtered == 8u32.into());
    let six = aut_groups(&q(&entry("generic6a")));
    assert_eq!(six.graph, six.filtered);
}

#[test]
fn circuits_from_products() {
    let vg = q(&entry("a3"));
    let fc = vg.fil();
    let xbar: Vec<_> = (0..6).map(|i| fc.xbar(i)).collect();
    let mut found = detect_circuits_from_products(&vg, &xbar).unwrap();
    let mut expected = signed_circuits(vg.arrangement()).supports();
    found.sort_unstable();
    expected.sort_unstable();
    assert_eq!(found, expected);

    let scaled: Vec<_> = xbar
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let mu = Rationals.from_i64(i as i64 + 2);
            let mut u = u.clone();
            u.coords.iter_mut().for_each(|c| *c = Rationals.mul(c, &mu));
            u
        })
        .collect();
    let mut rescaled = detect_circuits_from_products(&vg, &scaled).unwrap();
    rescaled.sort_unstable();
    assert_eq!(rescaled, expected);
    let err = check_circuits(&vg, &scaled).unwrap_err();
    assert!(matches!(err, Error::NotGoodGenerators { .. }));

    for &s in expected.iter().filter(|s| s.count_ones() == 3) {
        assert!(circuit_relation(&vg, &xbar, s).unwrap().iter().all(|x| Rationals.is_unit_sign(x)));
    }
    assert!(detect_circuits_from_products(&q(&entry("b2")), &[fc.xbar(0), fc.xbar(1)]).is_err());
}

#[test]
fn pencil_relation_follows_the_dependency() {
    let vg = q(&entry("pencil3"));
    let xbar: Vec<_> = (0..3).map(|i| vg.fil().xbar(i)).collect();
    let lambda = circuit_relation(&vg, &xbar, mask(&[0, 1, 2])).unwrap();
    let sigma = signed_circuits(vg.arrangement()).representatives()[0].clone();
    let s: Vec<i64> = sigma.0.iter().map(|x| x.as_i64()).collect();
    let l: Vec<i64> = lambda.iter().map(|x| if Rationals.is_one(x) { 1 } else { -1 }).collect();
    assert!(l == s || l.iter().zip(&s).all(|(a, b)| *a == -b));
    assert_eq!(check_circuits(&vg, &xbar).unwrap().circuits, signed_circuits(vg.arrangement()));
}

#[test]
fn sign_rescaled_generators_recover_a_reorientation() {
    let vg = q(&entry("generic6a"));
    let ones = vec![Rationals.one(); 6];
    let v = recover_and_compare(&vg, &ones).unwrap();
    assert!(v.pass());
    assert_eq!(v.reorientation, Some(vec![false; 6]));
    let signs: Vec<_> = [1, -1, -1, 1, 1, -1].iter().map(|&s| Rationals.from_i64(s)).collect();
    assert!(recover_and_compare(&vg, &signs).unwrap().pass());
}

#[test]
fn square_zero_lines() {
    assert_eq!(q(&entry("single")).sqzero().unwrap().len(), 1);
    let b2 = q(&entry("b2")).sqzero().unwrap();
    assert_eq!(b2.iter().map(|l| l.support.clone()).collect::<Vec<_>>(), [vec![0], vec![1]]);
    assert_eq!(q(&entry("falk-a")).sqzero().unwrap().len(), 11);
    assert_eq!(q(&entry("falk-b")).sqzero().unwrap().len(), 10);
}

#[test]
fn characteristic_two_is_gated() {
    let a = entry("pencil3");
    let f2 = PrimeField::new(2).unwrap();
    assert_eq!(VgAlgebra::new(&a, f2, false).unwrap_err().kind(), ErrorKind::Usage);
    let vg = VgAlgebra::new(&a, f2, true).unwrap();
    assert_eq!(vg.gheav_bruteforce().len(), 14);
}

#[test]
fn comparisons() {
    let (a, b) = (entry("generic6a"), entry("generic6b"));
    assert_eq!(compare(&a, &b, CompareWhat::Lattice).unwrap().isomorphic, Some(true));
    let t = compare(&a, &b, CompareWhat::Topegraph).unwrap();
    assert_eq!(t.message, "NOT isomorphic: degree profiles differ (two degree-6 vertices vs none)");
    assert_eq!(compare(&a, &b, CompareWhat::FilteredVg).unwrap().isomorphic, Some(false));

    let g = compare(&entry("falk-a"), &entry("falk-b"), CompareWhat::GradedVgInvariants).unwrap();
    assert_eq!(g.isomorphic, Some(false));
    assert!(g.message.starts_with("graded VG algebras non-isomorphic"));

    let a3 = entry("a3");
    for w in CompareWhat::ALL {
        assert_ne!(compare(&a3, &a3, w).unwrap().isomorphic, Some(false), "{w:?}");
    }
}
