use proptest::prelude::*;

use polysurg::coxeter::{coxeter_complex, sphere_subcomplex};
use polysurg::genetics::{dominates, genetic_code, realize, saturated_chain, GeneticCode, LengthVector};
use polysurg::homology::{barycentric, betti_oracle, homology, SimplicialComplex};
use polysurg::posets::{comb_surgery, intersection_poset, IntersectionElement, partition_lattice, poset_isomorphic, SetPartition};
use polysurg::surgery::{run_chain, Mode};
use polysurg::{Error, Subset};

fn lengths(max_m: usize) -> impl Strategy<Value = Vec<i64>> {
    (3..=max_m).prop_flat_map(|m| prop::collection::vec(1i64..40, m)).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

fn code_of(v: &[i64]) -> Option<(LengthVector, GeneticCode)> {
    let alpha = LengthVector::from_integers(v).ok()?;
    match genetic_code(&alpha) {
        // an overlong side leaves the space empty and the code has no genes
        Ok(g) if g.is_empty() => None,
        Ok(g) => Some((alpha, g)),
        Err(Error::NonGeneric(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn codes(m: usize) -> Vec<GeneticCode> {
    GeneticCode::all(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genes_are_an_antichain_and_agree_with_lengths(v in lengths(8)) {
        let Some((alpha, g)) = code_of(&v) else { return Ok(()) };
        let m = g.m();
        for (i, &a) in g.genes().iter().enumerate() {
            for &b in &g.genes()[i + 1..] {
                prop_assert!(!dominates(a, b) && !dominates(b, a));
            }
        }
        for s in Subset::all(m) {
            prop_assert_eq!(g.is_short(s), alpha.is_short(s).unwrap(), "{}", s);
        }
    }

    #[test]
    fn chains_reach_every_short_set(v in lengths(7)) {
        let Some((_, g)) = code_of(&v) else { return Ok(()) };
        let c = saturated_chain(&g).unwrap();
        let mut reached: Vec<Subset> = c.added.clone();
        reached.push(Subset::singleton(g.m()));
        reached.sort();
        let mut want = g.short_sets_with_m();
        want.sort();
        prop_assert_eq!(reached, want);
        for (w, (a, b)) in c.codes.iter().zip(&c.codes[1..]).enumerate() {
            prop_assert_eq!(a.covered_by(b), Some(c.added[w]));
        }
    }

    #[test]
    fn realize_round_trips(v in lengths(7)) {
        let Some((_, g)) = code_of(&v) else { return Ok(()) };
        let alpha = realize(&g).unwrap().expect("code of a length vector is realizable");
        prop_assert_eq!(genetic_code(&alpha).unwrap(), g);
    }

    #[test]
    fn subdivision_keeps_homology(faces in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=3), 1..10)) {
        let faces: Vec<Vec<usize>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
        let s = SimplicialComplex::from_faces(7, &faces).unwrap();
        let t = s.subdivide().unwrap();
        let (a, b) = (homology(&s).unwrap(), homology(&t).unwrap());
        prop_assert_eq!(a.betti, b.betti);
        prop_assert_eq!(a.torsion, b.torsion);
    }

    #[test]
    fn coxeter_spheres_are_coxeter_complexes(n in 3usize..=6, block in 1u32..64) {
        let b = Subset::from_bits(block << 1).intersection(Subset::full(n));
        prop_assume!(b.len() >= 2 && b.len() < n);
        let k = coxeter_complex(n).unwrap();
        let pi = SetPartition::with_block(n, b).unwrap();
        // the isomorphism with the smaller Coxeter complex is verified inside
        let s = sphere_subcomplex(&k, &pi).unwrap();
        prop_assert!(s.quotient_labels.is_some());
        prop_assert_eq!(s.cells.len(), coxeter_complex(n - b.len() + 1).map_or(2, |c| c.len()));
    }
}

#[test]
fn genetic_order_is_a_partial_order_matching_inclusion() {
    for m in 3..=6 {
        let all = codes(m);
        for a in &all {
            assert!(a.leq(a));
            let sa = a.short_sets_with_m();
            for b in &all {
                let sb = b.short_sets_with_m();
                assert_eq!(a.leq(b), sa.iter().all(|s| sb.contains(s)), "{} {}", a.notation(), b.notation());
                if a.leq(b) && b.leq(a) {
                    assert_eq!(a, b);
                }
            }
        }
    }
    // transitivity on a smaller ground set, where it is cheap
    let all = codes(5);
    for a in &all {
        for b in all.iter().filter(|b| a.leq(b)) {
            for c in all.iter().filter(|c| b.leq(c)) {
                assert!(a.leq(c));
            }
        }
    }
}

#[test]
fn covers_are_exhaustive() {
    for m in 3..=6 {
        let all = codes(m);
        for a in &all {
            let mut ups: Vec<GeneticCode> = a.up_covers();
            ups.sort();
            let mut want: Vec<GeneticCode> = all.iter().filter(|b| a.covered_by(b).is_some()).cloned().collect();
            want.sort();
            assert_eq!(ups, want, "{}", a.notation());
            for d in a.down_covers() {
                assert!(d.covered_by(a).is_some());
            }
        }
    }
}

#[test]
fn trivial_code_poset_is_truncated_partition_lattice() {
    for m in 4..=7 {
        let l = intersection_poset(&GeneticCode::trivial(m), true).unwrap();
        let pi = partition_lattice(m - 1).unwrap();
        let top = (0..pi.len()).find(|&i| pi.label(i).num_blocks() == 1).unwrap();
        let keep: Vec<usize> = (0..pi.len()).filter(|&i| i != top).collect();
        assert!(poset_isomorphic(&l, &pi.restrict(&keep)).unwrap().is_some(), "m = {m}");
    }
}

#[test]
fn combinatorial_surgery_shadows_every_cover() {
    // CS along J^c of the poset of G is the poset of the code covering G by J
    for m in 4..=6 {
        for g in codes(m) {
            if realize(&g).unwrap().is_none() {
                continue;
            }
            let l = intersection_poset(&g, true).unwrap();
            for h in g.up_covers() {
                if realize(&h).unwrap().is_none() {
                    continue;
                }
                let j = g.covered_by(&h).unwrap();
                let target = IntersectionElement::plain(SetPartition::with_block(m, j.complement(m)).unwrap());
                let x = (0..l.len()).find(|&i| l.label(i) == &target).unwrap();
                let cs = comb_surgery(&l, x).unwrap();
                assert!(cs.rank_violations.is_empty(), "{} by {j}", g.notation());
                let want = intersection_poset(&h, true).unwrap();
                assert!(poset_isomorphic(&cs.poset, &want).unwrap().is_some(), "{} by {j}", g.notation());
            }
        }
    }
}

#[test]
fn double_cover_doubles_euler_characteristic() {
    for g in codes(5) {
        if realize(&g).unwrap().is_none() {
            continue;
        }
        let t = run_chain(&g, true, Mode::Collapse).unwrap();
        for r in &t.steps {
            assert_eq!(r.cover_euler_characteristic, Some(2 * r.euler_characteristic), "{}", g.notation());
        }
        let chi: i64 = betti_oracle(&g).unwrap().iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(chi, 2 * t.last().euler_characteristic);
    }
}

#[test]
fn exact_and_model_agree() {
    for g in codes(5) {
        if realize(&g).unwrap().is_none() {
            continue;
        }
        let exact = run_chain(&g, false, Mode::Collapse).unwrap();
        match run_chain(&g, false, Mode::Model) {
            Ok(model) => assert_eq!(exact.last().homology.betti, model.last().homology.betti_padded(3), "{}", g.notation()),
            Err(Error::ChainInterference { .. }) => {}
            Err(e) => panic!("{}: {e}", g.notation()),
        }
        let b = barycentric(exact.complexes.last().unwrap()).unwrap();
        b.audit_closure().unwrap();
    }
}
