use spin_ramp::{RampConfig, C64};
use spin_ramp::exact::*;
use spin_ramp::rg::{RgGenerator, sector_project, SectorLabel};
use spin_ramp::ode::{integrate, IntegrationSpec};

fn ode_sector(config: &RampConfig, jz: i64, initial: &[C64], times: &[f64]) -> Vec<(f64, Vec<C64>)> {
    let gen = RgGenerator::new(config, &[0, 1], true).unwrap();
    let full = gen.at_time(config.t_init);
    let (_, slots) = sector_project(&full, 2, SectorLabel::from_jz(jz, 2).unwrap()).unwrap();
    let mut spec = IntegrationSpec::new(config.t_init, *times.last().unwrap());
    spec.rel_tol = 1e-11; spec.abs_tol = 1e-14;
    spec.dense_samples = times.to_vec();
    let mut init_full = vec![C64::new(0.0, 0.0); 9];
    for (i, &s) in slots.iter().enumerate() { init_full[s] = initial[i]; }
    let (out, _) = integrate(|t, x, o| gen.apply(t, x, o), &init_full, &spec).unwrap();
    out.into_iter().map(|(t, v)| (t, slots.iter().map(|&s| v[s]).collect())).collect()
}

fn main() {
    let nu = 2.6;
    let config = RampConfig::new(nu, vec![0.4, 1.2], 1e-5, 1e3).unwrap();
    let times = vec![1e-5, 1e-2, 1.0, 10.0];
    let init = [C64::new(0.6, 0.2), C64::new(-0.3, 0.8)];
    for jz in [-1i64, 1] {
        let exact = solve_n2_sector(&config, (0, 1), jz, &init, &times).unwrap();
        let numeric = ode_sector(&config, jz, &init, &times);
        println!("== jz = {jz}");
        for ((t, e), (_, n)) in exact.iter().zip(numeric.iter()) {
            println!("t={t:9.2e}: exact [{:+.5e}{:+.5e}i, {:+.5e}{:+.5e}i]", e[0].re, e[0].im, e[1].re, e[1].im);
            println!("            ode  [{:+.5e}{:+.5e}i, {:+.5e}{:+.5e}i]", n[0].re, n[0].im, n[1].re, n[1].im);
        }
    }
}
