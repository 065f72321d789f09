use spin_ramp::{RampConfig, C64};
use spin_ramp::exact::*;
use spin_ramp::rg::{RgGenerator, sector_project, SectorLabel};
use spin_ramp::ode::{integrate, IntegrationSpec};

fn ode_sector(config: &RampConfig, initial: &[C64], times: &[f64]) -> Vec<(f64, Vec<C64>)> {
    let gen = RgGenerator::new(config, &[0, 1], true).unwrap();
    let full = gen.at_time(config.t_init);
    let (_, slots) = sector_project(&full, 2, SectorLabel::from_jz(0, 2).unwrap()).unwrap();
    let mut spec = IntegrationSpec::new(config.t_init, *times.last().unwrap());
    spec.rel_tol = 1e-12; spec.abs_tol = 1e-15;
    spec.dense_samples = times.to_vec();
    let mut init_full = vec![C64::new(0.0, 0.0); 9];
    for (i, &s) in slots.iter().enumerate() { init_full[s] = initial[i]; }
    let (out, _) = integrate(|t, x, o| gen.apply(t, x, o), &init_full, &spec).unwrap();
    out.into_iter().map(|(t, v)| (t, slots.iter().map(|&s| v[s]).collect())).collect()
}

fn main() {
    for nu in [6.0f64] {
        let config = RampConfig::new(nu, vec![0.4, 1.4], 1e-5, 1e3).unwrap();
        for mode in 0..3 {
            // launch from the mode value at t_init (tau = t, delta = 1)
            let m0 = spin_ramp::exact::dbg_mode(nu, mode, 1e-5);
            let init = spin_ramp::exact::dbg_rot_to_slots(&m0);
            let times = vec![1e-5, 1e-2, 0.5, 2.0];
            let exact = solve_n2_sector(&config, (0, 1), 0, &init, &times).unwrap();
            let numeric = ode_sector(&config, &init.to_vec(), &times);
            println!("== nu={nu} mode {mode}");
            for ((t, e), (_, n)) in exact.iter().zip(numeric.iter()) {
                let scale = n.iter().map(|v| v.norm()).fold(1e-30, f64::max);
                let worst = e.iter().zip(n.iter()).map(|(a,b)| (a-b).norm()).fold(0.0, f64::max);
                println!("t={t:8.1e} rel dev {:.2e}   exact1 {:+.6e}{:+.6e}i ode1 {:+.6e}{:+.6e}i", worst/scale, e[1].re, e[1].im, n[1].re, n[1].im);
            }
        }
    }
}
