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
    for nu in [0.5f64, 1.0, 2.5, 5.0, 20.0] {
        for mode in 0..3 {
            let mut worst = 0.0f64;
            for tau in [0.4f64, 0.9, 1.6] {
                let h = 1e-6;
                let cm = dbg_mode(nu, mode, tau-h);
                let cp = dbg_mode(nu, mode, tau+h);
                let c0 = dbg_mode(nu, mode, tau);
                let m = h0(nu, tau);
                let scale = c0.iter().map(|v| v.norm()).fold(1e-300, f64::max);
                for r in 0..3 {
                    let d = (cp[r]-cm[r])/(2.0*h);
                    let rhs: C64 = (0..3).map(|c| m[r][c]*c0[c]).sum();
                    worst = worst.max((d-rhs).norm()/scale.max(rhs.norm()));
                }
            }
            println!("nu={nu:5} mode {mode}: worst rel residual {worst:.2e}");
        }
    }
}
