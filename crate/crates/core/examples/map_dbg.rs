use spin_ramp::lindblad::{presets, evolve_density, extract_correlator, EvolveOptions, all_labels};
use spin_ramp::ode::{integrate, IntegrationSpec};
use spin_ramp::rg::{labels_to_state, state_correlator, RgGenerator, CorrelatorState, Frame};
use spin_ramp::{RampConfig, C64};
use rand::SeedableRng;

fn main() {
    let nspins = 3usize;
    let cfg = RampConfig::new(6.0, (1..=nspins).map(|i| i as f64 / nspins as f64).collect(), 1e-5, 1e2).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let rho0 = presets::random_density(nspins, cfg.t_init, &mut rng);
    let times: Vec<f64> = (0..15).map(|i| 10f64.powf(-5.0 + 7.0*i as f64/14.0)).collect();
    let states = evolve_density(&cfg, &rho0, &times, &EvolveOptions::default()).unwrap();

    // group labels by site set
    use std::collections::BTreeMap;
    let mut by_sites: BTreeMap<Vec<usize>, Vec<spin_ramp::CorrelatorLabel>> = BTreeMap::new();
    for l in all_labels(nspins) { by_sites.entry(l.sites()).or_default().push(l); }

    let mut worst = 0.0f64;
    for (sites, labels) in &by_sites {
        // initialize RG state from rho0 correlators
        let init = labels_to_state(sites, cfg.t_init, Frame::Lab, |l| {
            extract_correlator(&rho0, l).unwrap()
        }).unwrap();
        let gen = RgGenerator::new(&cfg, sites, true).unwrap();
        let mut spec = IntegrationSpec::new(cfg.t_init, 1e2);
        spec.dense_samples = times.clone();
        let (rg_out, _) = integrate(|t, x, out| gen.apply(t, x, out), &init.amplitudes, &spec).unwrap();
        for ((t, amps), lb_state) in rg_out.iter().zip(states.iter()) {
            let st = CorrelatorState { sites: sites.clone(), amplitudes: amps.clone(), time: *t, frame: Frame::Lab };
            for l in labels {
                let rg_val = state_correlator(&st, l).unwrap();
                let lb_val = extract_correlator(lb_state, l).unwrap();
                let d = (rg_val - lb_val).norm();
                if d > worst { worst = d; }
            }
        }
    }
    println!("worst |rg - lindblad| over all 63 correlators x 15 times = {worst:.3e}");
}
