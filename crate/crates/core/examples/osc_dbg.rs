fn main() {
    use spin_ramp::ode::{integrate, IntegrationSpec};
    use spin_ramp::C64;
    let omega = 6.0;
    let t0 = 1.0;
    for periods in [1.0, 8.0, 64.0] {
        let t1 = t0 + periods * std::f64::consts::TAU / omega;
        let spec = IntegrationSpec::new(t0, t1).with_log_samples(5);
        let (samples, stats) = integrate(
            move |_t, x: &[C64], out: &mut [C64]| { out[0] = C64::new(0.0, omega) * x[0]; },
            &[C64::new(1.0, 0.0)], &spec).unwrap();
        let (tf, vf) = samples.last().unwrap();
        let exact = omega * (tf - t0);
        let mut dphi = (vf[0].arg() - exact) % std::f64::consts::TAU;
        if dphi > std::f64::consts::PI { dphi -= std::f64::consts::TAU; }
        if dphi < -std::f64::consts::PI { dphi += std::f64::consts::TAU; }
        println!("periods={periods}: |C|-1 = {:+.3e}, dphi/period = {:+.3e}, steps acc={} rej={}",
            vf[0].norm()-1.0, dphi/periods, stats.accepted, stats.rejected);
    }
}
