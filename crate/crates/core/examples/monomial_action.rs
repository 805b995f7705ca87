// The two-sided monomial action on idempotent labels [A], with scalars carried as
// exponents of ζ_p.

use std::sync::Arc;

use unitri::{FieldElement, FieldSpec, Result, RootPos, ScaledIdempotent, UnitriGroup};

pub fn run_example() -> Result<()> {
    let g = UnitriGroup::new(4, Arc::new(FieldSpec::parse("3", None)?))?;
    let a = g.matrix(&[(3, 1, 1), (4, 2, 2)])?;
    let s = ScaledIdempotent::unscaled(a.clone());
    println!("[A] = {a:?}");

    let x = g.root_element(RootPos::new(2, 1), FieldElement(1));
    let right = g.act_right_elem(&s, &x)?;
    println!("[A] x_21(1) = zeta^{} {:?}", right.exponent, right.matrix);

    let y = g.root_element(RootPos::new(4, 3), FieldElement(2));
    let left = g.act_left_elem(&y, &s)?;
    println!("x_43(2) [A] = zeta^{} {:?}", left.exponent, left.matrix);

    // the action is a right action: ([A]u)v = [A](uv)
    let u = g.product(&[(RootPos::new(3, 2), FieldElement(1)), (RootPos::new(2, 1), FieldElement(2))]);
    let v = g.product(&[(RootPos::new(4, 3), FieldElement(1))]);
    let stepwise = g.act_right_elem(&g.act_right_elem(&s, &u)?, &v)?;
    let at_once = g.act_right_elem(&s, &g.mul(&u, &v))?;
    assert_eq!(stepwise, at_once);
    println!("([A]u)v = [A](uv): {:?}", at_once.matrix);

    // and the two sides commute
    let lr = g.act_right_elem(&g.act_left_elem(&y, &s)?, &u)?;
    let rl = g.act_left_elem(&y, &g.act_right_elem(&s, &u)?)?;
    assert_eq!(lr, rl);
    println!("(y[A])u = y([A]u)");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
