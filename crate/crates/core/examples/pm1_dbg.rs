use spin_ramp::{RampConfig, C64};
use spin_ramp::exact::*;
use spin_ramp::rg::{RgGenerator, sector_project, SectorLabel};
use spin_ramp::ode::{integrate, IntegrationSpec};

fn ode_sector(config: &RampConfig, jz: i64, initial: &[C64], t0: f64, times: &[f64], rtol: f64) -> Vec<(f64, Vec<C64>)> {
    let gen = RgGenerator::new(config, &[0, 1], true).unwrap();
    let full = gen.at_time(t0);
    let (_, slots) = sector_project(&full, 2, SectorLabel::from_jz(jz, 2).unwrap()).unwrap();
    let mut spec = IntegrationSpec::new(t0, *times.last().unwrap());
    spec.rel_tol = rtol; spec.abs_tol = rtol*1e-3;
    spec.dense_samples = times.to_vec();
    let mut init_full = vec![C64::new(0.0, 0.0); 9];
    for (i, &s) in slots.iter().enumerate() { init_full[s] = initial[i]; }
    let (out, _) = integrate(|t, x, o| gen.apply(t, x, o), &init_full, &spec).unwrap();
    out.into_iter().map(|(t, v)| (t, slots.iter().map(|&s| v[s]).collect())).collect()
}

fn main() {
    let nu = 0.9;
    let config = RampConfig::new(nu, vec![0.4, 1.2], 1e-5, 1e3).unwrap();
    let init = [C64::new(0.6, 0.2), C64::new(-0.3, 0.8)];
    let times = vec![1e-2, 1.0, 10.0];
    // route A: closed form from t_init
    let exact = solve_n2_sector(&config, (0, 1), 1, &init, &times).unwrap();
    // route B: tight ODE from t_init
    let numeric = ode_sector(&config, 1, &init, config.t_init, &times, 1e-13);
    for ((t, e), (_, n)) in exact.iter().zip(numeric.iter()) {
        let dev = e.iter().zip(n.iter()).map(|(a,b)| (a-b).norm()).fold(0.0, f64::max);
        let scale = n.iter().map(|v| v.norm()).fold(1e-30, f64::max);
        println!("from t_init: t={t:7.2}: rel dev {:.2e}", dev/scale);
    }
    // route C: re-anchor boundary at t=0.01 using ODE value there
    let n001: Vec<C64> = numeric[0].1.clone();
    let config2 = RampConfig::new(nu, vec![0.4, 1.2], 1e-2, 1e3).unwrap();
    let exact2 = solve_n2_sector(&config2, (0, 1), 1, &n001, &times[1..]).unwrap();
    for ((t, e), (_, n)) in exact2.iter().zip(numeric[1..].iter()) {
        let dev = e.iter().zip(n.iter()).map(|(a,b)| (a-b).norm()).fold(0.0, f64::max);
        let scale = n.iter().map(|v| v.norm()).fold(1e-30, f64::max);
        println!("re-anchored:  t={t:7.2}: rel dev {:.2e}", dev/scale);
    }
}
