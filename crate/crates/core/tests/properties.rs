use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;

use unitri::census::CountingPolynomial;
use unitri::minimal::{analyze_shape, perp, side_sets};
use unitri::oracle::{cyclotomic_rank, CycNumber};
use unitri::orbit::{classify, orbit_bfs, reduce_to_template, verge_of, DEFAULT_ORBIT_CAP};
use unitri::roots::positions;
use unitri::{
    FieldElement, FieldSpec, GroupElement, MainConditionSet, NilMatrix, RootPos, ScaledIdempotent, Side, UnitriGroup,
};

const FIELDS: [&str; 10] = ["2", "3", "5", "7", "2^2", "2^3", "3^2", "2^4", "5^2", "3^3"];

fn field_strategy() -> impl Strategy<Value = Arc<FieldSpec>> {
    (0..FIELDS.len()).prop_map(|i| Arc::new(FieldSpec::parse(FIELDS[i], None).unwrap()))
}

/// A group with small `n` and `q`, and raw codes for one matrix and two group elements.
fn action_case() -> impl Strategy<Value = (UnitriGroup, Vec<u32>, Vec<u32>, Vec<u32>)> {
    (2usize..=5, prop::sample::select(vec!["2", "3", "2^2", "5"])).prop_flat_map(|(n, q)| {
        let g = UnitriGroup::new(n, Arc::new(FieldSpec::parse(q, None).unwrap())).unwrap();
        let d = g.dim();
        let q = g.q();
        let codes = move || prop::collection::vec(0..q, d);
        (Just(g), codes(), codes(), codes())
    })
}

fn matrix(g: &UnitriGroup, codes: &[u32]) -> NilMatrix {
    let mut a = g.zero_matrix();
    for (p, &c) in positions(g.n()).zip(codes) {
        a.set(p, FieldElement(c as u16));
    }
    a
}

fn element(g: &UnitriGroup, codes: &[u32]) -> GroupElement {
    let mut u = g.identity();
    for (p, &c) in positions(g.n()).zip(codes) {
        u.set(p, FieldElement(c as u16));
    }
    u
}

/// Main conditions from a column-by-column choice of rows.
fn main_set(n: usize, picks: &[u8]) -> MainConditionSet {
    let mut used = HashSet::new();
    let mut out = Vec::new();
    for j in 1..n {
        let free: Vec<usize> = (j + 1..=n).filter(|i| !used.contains(i)).collect();
        let k = picks[j - 1] as usize % (free.len() + 1);
        if k < free.len() {
            used.insert(free[k]);
            out.push(RootPos::new(free[k], j));
        }
    }
    MainConditionSet::new(n, out).unwrap()
}

fn main_set_strategy(max_n: usize) -> impl Strategy<Value = MainConditionSet> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(any::<u8>(), n).prop_map(move |picks| main_set(n, &picks)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let q = f.q() as u16;
        let (a, b, c) = (FieldElement(a % q), FieldElement(b % q), FieldElement(c % q));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement(1));
        }
        let p = f.p();
        prop_assert_eq!(f.theta_exponent(f.add(a, b)), (f.theta_exponent(a) + f.theta_exponent(b)) % p);
        prop_assert_eq!(f.pow(a, f.q()), a);
    }

    #[test]
    fn right_action_axiom((g, a, u, v) in action_case()) {
        let s = ScaledIdempotent::unscaled(matrix(&g, &a));
        let (u, v) = (element(&g, &u), element(&g, &v));
        let lhs = g.act_right_elem(&g.act_right_elem(&s, &u).unwrap(), &v).unwrap();
        prop_assert_eq!(lhs, g.act_right_elem(&s, &g.mul(&u, &v)).unwrap());
    }

    #[test]
    fn left_action_axiom((g, a, u, v) in action_case()) {
        let s = ScaledIdempotent::unscaled(matrix(&g, &a));
        let (u, v) = (element(&g, &u), element(&g, &v));
        let lhs = g.act_left_elem(&v, &g.act_left_elem(&u, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, g.act_left_elem(&g.mul(&v, &u), &s).unwrap());
    }

    #[test]
    fn sides_commute_and_closed_forms_agree((g, a, u, v) in action_case()) {
        let s = ScaledIdempotent::unscaled(matrix(&g, &a));
        let (u, v) = (element(&g, &u), element(&g, &v));
        let lr = g.act_right_elem(&g.act_left_elem(&v, &s).unwrap(), &u).unwrap();
        let rl = g.act_left_elem(&v, &g.act_right_elem(&s, &u).unwrap()).unwrap();
        prop_assert_eq!(lr, rl);
        prop_assert_eq!(g.act_right_elem_closed(&s, &u).unwrap(), g.act_right_elem(&s, &u).unwrap());
        prop_assert_eq!(g.act_left_elem_closed(&v, &s).unwrap(), g.act_left_elem(&v, &s).unwrap());
    }

    #[test]
    fn group_inverse_and_factorization((g, _a, u, _v) in action_case()) {
        let u = element(&g, &u);
        prop_assert!(g.mul(&u, &g.inv(&u)).is_identity());
        prop_assert_eq!(g.product(&g.factor(&u)), u);
    }

    #[test]
    fn template_and_verge_are_orbit_invariants((g, a, u, _v) in action_case()) {
        let a = matrix(&g, &a);
        let t = reduce_to_template(&g, &a);
        prop_assert!(classify(&t).is_template);
        let v = verge_of(&g, &a);
        let moved = g.right_image(&a, &element(&g, &u));
        prop_assert_eq!(reduce_to_template(&g, &moved), t);
        prop_assert_eq!(verge_of(&g, &moved), v);
    }

    #[test]
    fn right_orbit_size_is_q_to_the_a((g, a, _u, _v) in action_case()) {
        prop_assume!(g.order().unwrap() <= 1 << 12);
        let a = matrix(&g, &a);
        let v = verge_of(&g, &a);
        let o = orbit_bfs(&g, &a, Side::Right, DEFAULT_ORBIT_CAP).unwrap();
        prop_assert_eq!(o.len() as u64, (g.q() as u64).pow(v.a() as u32));
    }

    #[test]
    fn perp_is_a_bijection_between_hats(p in main_set_strategy(10)) {
        let s = side_sets(&p);
        let left: Vec<RootPos> = s.lhat.difference(&s.l).to_vec();
        let right: HashSet<RootPos> = s.rhat.difference(&s.r).iter().collect();
        let images: HashSet<RootPos> = left.iter().map(|&x| perp(x, &p).unwrap()).collect();
        prop_assert_eq!(images.len(), left.len());
        prop_assert_eq!(images, right);
        prop_assert_eq!(left.len(), p.intersection_count());
    }

    #[test]
    fn shape_invariants(p in main_set_strategy(9)) {
        let r = analyze_shape(&p).unwrap();
        prop_assert!(r.c <= r.b);
        prop_assert_eq!(r.a, p.arm_total());
        prop_assert!(side_sets(&p).lhat.is_closed());
    }

    #[test]
    fn polynomial_evaluation_is_additive(xs in prop::collection::vec(-50i128..50, 0..6), ys in prop::collection::vec(-50i128..50, 0..6), t in -5i128..6) {
        let (x, y) = (CountingPolynomial::new(xs), CountingPolynomial::new(ys));
        let mut s = x.clone();
        s.add_assign(&y);
        prop_assert_eq!(s.eval(t), Some(x.eval(t).unwrap() + y.eval(t).unwrap()));
    }

    #[test]
    fn cyclotomic_rank_ignores_unit_scaling(
        p in prop::sample::select(vec![2u32, 3, 5]),
        entries in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 1..4),
        shifts in prop::collection::vec(0u32..5, 4),
    ) {
        let rows: Vec<Vec<CycNumber>> = entries.iter().map(|r| r.iter().map(|&k| CycNumber::from_int(p, k)).collect()).collect();
        let scaled: Vec<Vec<CycNumber>> = rows.iter().zip(&shifts).map(|(r, &e)| r.iter().map(|z| z.mul_zeta(e)).collect()).collect();
        let mut doubled = rows.clone();
        doubled.extend(scaled.iter().cloned());
        let r = cyclotomic_rank(&rows, p).unwrap();
        prop_assert_eq!(cyclotomic_rank(&scaled, p).unwrap(), r);
        prop_assert_eq!(cyclotomic_rank(&doubled, p).unwrap(), r);
    }
}
