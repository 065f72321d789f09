use spin_ramp::C64;
use spin_ramp::exact::dbg_mode;
use spin_ramp::specfun::hyp1f2;

fn params(nu: f64, mode: usize) -> (f64, f64, f64) {
    match mode {
        0 => ((nu + 2.0) / nu, (3.0*nu + 2.0)/(2.0*nu), (2.0*nu + 3.0)/nu),
        1 => (-1.0/nu, (nu - 4.0)/(2.0*nu), -3.0/nu),
        _ => ((nu + 2.0)/(2.0*nu), (nu - 2.0)/(2.0*nu), (3.0*nu + 4.0)/(2.0*nu)),
    }
}
fn f(nu: f64, mode: usize, j: usize, tau: f64) -> f64 {
    let (a,b,c) = params(nu, mode);
    let jj = j as f64;
    hyp1f2(a+jj, b+jj, c+jj, -tau*tau).unwrap().value
}

fn main() {
    let nu = 6.0f64;
    let g = |tau: f64| 1.0/(nu*tau);
    let i = C64::new(0.0,1.0);
    let od = 2.0/3.0f64.sqrt();
    let od2 = (8.0f64/3.0).sqrt();
    for mode in [0usize, 2] {
        println!("== mode {mode}");
        for tau in [0.3f64, 0.8, 1.3] {
            let h = 1e-6;
            let cm = dbg_mode(nu, mode, tau-h);
            let cp = dbg_mode(nu, mode, tau+h);
            let c0 = dbg_mode(nu, mode, tau);
            let dc1 = (cp[0]-cm[0])/(2.0*h);
            let dc2 = (cp[1]-cm[1])/(2.0*h);
            // eq0: dc1 = -6g c1 + i*od*c2  => c2_true
            let c2_true = (dc1 + 6.0*g(tau)*c0[0])/(i*od);
            // eq1: dc2 = i*od*c1 - 2g c2 - i*od2*c3 => c3_true
            let c3_true = (i*od*c0[0] - 2.0*g(tau)*c2_true - dc2_est(&cp,&cm,h))/(i*od2);
            fn dc2_est(cp: &[C64;3], cm: &[C64;3], h: f64) -> C64 { (cp[1]-cm[1])/(2.0*h) }
            let _ = dc2;
            println!("tau={tau}:");
            println!("  c2 mine {:+.8e}{:+.8e}i true {:+.8e}{:+.8e}i", c0[1].re,c0[1].im, c2_true.re,c2_true.im);
            println!("  c3 mine {:+.8e}{:+.8e}i", c0[2].re, c0[2].im);
            println!("  c3 true {:+.8e}{:+.8e}i", c3_true.re, c3_true.im);
            // print F values to let me fit coefficients
            println!("  F0={:+.9e} F1={:+.9e} F2={:+.9e} tau2={:.4}", f(nu,mode,0,tau), f(nu,mode,1,tau), f(nu,mode,2,tau), tau*tau);
        }
    }
}
