use spin_ramp::C64;
use spin_ramp::exact::dbg_mode;

fn h0(nu: f64, tau: f64) -> [[C64; 3]; 3] {
    let g = 1.0 / (nu * tau);
    let i = C64::new(0.0, 1.0);
    let od = 2.0 / 3.0f64.sqrt();
    let od2 = (8.0f64/3.0).sqrt();
    [
        [C64::new(-6.0*g, 0.0), i*od, C64::new(0.0,0.0)],
        [i*od, C64::new(-2.0*g,0.0), -i*od2],
        [C64::new(0.0,0.0), -i*od2, C64::new(0.0,0.0)],
    ]
}

fn main() {
    let nu = 6.0;
    for mode in [0usize, 2] {
        println!("== mode {mode}");
        for tau in [0.3f64, 1.0] {
            let h = 1e-6;
            let cm = dbg_mode(nu, mode, tau - h);
            let cp = dbg_mode(nu, mode, tau + h);
            let c0 = dbg_mode(nu, mode, tau);
            let m = h0(nu, tau);
            for r in 0..3 {
                let deriv = (cp[r] - cm[r]) / (2.0 * h);
                let rhs: C64 = (0..3).map(|c| m[r][c] * c0[c]).sum();
                println!("tau={tau} comp {r}: dc/dtau {:+.6e}{:+.6e}i  H0c {:+.6e}{:+.6e}i  ratio {:.4}", deriv.re, deriv.im, rhs.re, rhs.im, (deriv/rhs).re);
            }
        }
    }
}
