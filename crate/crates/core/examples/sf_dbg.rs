fn main() {
    use spin_ramp::specfun::*;
    println!("gamma(1) = {:.17}", gamma_fn(1.0).unwrap().value);
    println!("gamma(0.5)= {:.17}", gamma_fn(0.5).unwrap().value);
    let x = 1000.0;
    for nu in [0.25, 1.75, 4.5] {
        let b = bessel_jy_full(nu, x).unwrap();
        let amp = (2.0/(std::f64::consts::PI*x)).sqrt();
        let chi = x - nu*std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
        println!("nu={nu}: J={:.12e} lead={:.12e}   Y={:.12e} lead={:.12e}", b.j, amp*chi.cos(), b.y, amp*chi.sin());
        println!("   wron err = {:.3e}", b.j*b.yp - b.jp*b.y - 2.0/(std::f64::consts::PI*x));
    }
    // J_{1/2}(1000) exact:
    let b = bessel_jy_full(0.5, 1000.0).unwrap();
    let amp = (2.0/(std::f64::consts::PI*1000.0)).sqrt();
    println!("J_half(1000) = {:.12e} exact {:.12e}", b.j, amp*(1000f64).sin());
}
