// temporary probe for the TV-screen operator and resultant (will evolve into
// the acceptance suite)
use holonomica::closure::{algebraic_to_ode, AlgebraicFunction};
use holonomica::exact::poly::{MultiPoly, VarSet};
use holonomica::exact::resultant::sylvester_resultant;
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn tv_screen() -> MultiPoly {
    // q = y^4 + x^4 + x y / 100 - 1 over vars [x, y]
    let v = VarSet::of(&["x", "y"]);
    MultiPoly::var(&v, 1)
        .pow(4)
        .add(&MultiPoly::var(&v, 0).pow(4))
        .add(&MultiPoly::monomial(&v, &[1, 1], rat(1, 100)))
        .sub(&MultiPoly::one(&v))
}

#[test]
fn resultant_degree_twelve() {
    let q = tv_screen();
    let qy = q.derivative(1);
    let r = sylvester_resultant(&q, &qy, 1).unwrap().normalized_primitive();
    println!("resultant = {r}");
    assert_eq!(r.degree_in(0), 12);
    assert_eq!(r.coeff(&[12, 0]), BigRational::from(BigInt::from(25600000000i64)));
    assert_eq!(r.coeff(&[8, 0]), BigRational::from(BigInt::from(-76800000000i64)));
    assert_eq!(r.coeff(&[4, 0]), BigRational::from(BigInt::from(76799999973i64)));
    assert_eq!(r.coeff(&[0, 0]), BigRational::from(BigInt::from(-25600000000i64)));
}

#[test]
fn tv_screen_operator() {
    let q = tv_screen();
    let alg = AlgebraicFunction::new(q, 0, 1).unwrap();
    let op = algebraic_to_ode(&alg).unwrap();
    println!("order = {}", op.order());
    let coeffs = op.univariate_coeff_polys().unwrap();
    for (k, c) in coeffs.iter().enumerate() {
        println!("d^{k}: {c}");
    }
    assert_eq!(op.order(), 3);
}
