//! Arithmetic in multiquadratic fields: canonical bases, square roots, adjoining roots.

use divfield::algebra_core::rat;
use divfield::multiquad::{adjoin_sqrt, Adjoined, MqElement, MqField};

fn main() {
    // same field from different generators
    let a = MqField::new(&[rat(-1), rat(2), rat(-2)]).unwrap();
    let b = MqField::new(&[rat(2), rat(-8)]).unwrap();
    println!("{} == {}: {}", a.name(), b.name(), a == b);

    let k = MqField::new(&[rat(-1), rat(3)]).unwrap();
    let i = MqElement::sqrt_rational(&k, &rat(-1)).unwrap();
    let r3 = MqElement::sqrt_rational(&k, &rat(3)).unwrap();
    // (1 + sqrt(3))^2 = 4 + 2 sqrt(3)
    let x = &(&MqElement::one(&k) + &r3) * &(&MqElement::one(&k) + &r3);
    println!("sqrt({x}) = {}", x.sqrt().unwrap().unwrap());
    println!("{} is a square: {}", &i + &r3, (&i + &r3).is_square().unwrap());
    println!("1 / ({}) = {}", &i + &r3, (&i + &r3).inv().unwrap());

    // 6*sqrt(3) - 9 is not a square here; adjoining its root stays polyquadratic or not
    let y = &r3.scale(&rat(6)) - &MqElement::from_rational(&k, rat(9));
    match adjoin_sqrt(&y).unwrap() {
        Adjoined::Unchanged { root, .. } => println!("sqrt({y}) = {root}"),
        Adjoined::Extended { field, root } => println!("sqrt({y}) = {root} in {}", field.name()),
        Adjoined::NotPolyquadratic => println!("sqrt({y}) generates a non-polyquadratic extension"),
    }
    match adjoin_sqrt(&MqElement::from_rational(&k, rat(-15))).unwrap() {
        Adjoined::Extended { field, root } => println!("sqrt(-15) = {root} in {}", field.name()),
        other => println!("{other:?}"),
    }
}
