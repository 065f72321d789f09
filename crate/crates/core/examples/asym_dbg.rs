use spin_ramp::{RampConfig, C64};
use spin_ramp::exact::*;

fn main() {
    let tau_big = 1e3;
    for nu in [1.2f64, 2.5, 6.0] {
        let config = RampConfig::new(nu, vec![0.5, 1.5], 1e-5, 1e4).unwrap();
        for unit in 0..3 {
            let mut k = [C64::new(0.0,0.0); 3];
            k[unit] = C64::new(1.0, 0.0);
            let bnd = SectorBoundary { k1: k[0], k2: k[1], k3: k[2], tau0: 1e-5 };
            let mode = dbg_mode(nu, unit, tau_big);
            let slots = dbg_rot_to_slots(&mode);
            let exact_zz = slots[1];
            let exact_pm = -2.0*slots[0];
            let azz = asymptotic_n2(&config, (0,1), &bnd, N2Channel::Zz).unwrap().eval(tau_big);
            let apm = asymptotic_n2(&config, (0,1), &bnd, N2Channel::PlusMinus).unwrap().eval(tau_big);
            println!("nu={nu} k{}: zz asym {:+.6e}{:+.6e}i exact {:+.6e}{:+.6e}i  ratio {:+.4}{:+.4}i", unit+1, azz.re, azz.im, exact_zz.re, exact_zz.im, (azz/exact_zz).re, (azz/exact_zz).im);
            println!("        pm asym {:+.6e}{:+.6e}i exact {:+.6e}{:+.6e}i  ratio {:+.4}{:+.4}i", apm.re, apm.im, exact_pm.re, exact_pm.im, (apm/exact_pm).re, (apm/exact_pm).im);
        }
    }
}
