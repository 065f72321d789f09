fn main() {
    use spin_ramp::lindblad::*;
    use spin_ramp::rg::{sector_sum_state, state_correlator, Frame};
    use spin_ramp::C64;
    let n = 3usize;
    let sites: Vec<usize> = (0..n).collect();
    let st = sector_sum_state(&sites, 1e-5, Frame::Lab).unwrap();
    let rho = density_from_correlators(n, 1e-5, |label| {
        if label.n() == n { state_correlator(&st, label).unwrap() } else { C64::new(0.0, 0.0) }
    });
    match rho {
        Ok(r) => println!("ok, min eig = {:.3e}", r.min_eigenvalue()),
        Err(e) => {
            println!("error: {e}");
            // rebuild without validation to inspect
            let d = 1usize << n;
            let mut m = vec![C64::new(0.0,0.0); d*d];
            for i in 0..d { m[i*d+i] = C64::new(1.0,0.0); }
            for label in all_labels(n) {
                if label.n() != n { continue; }
                let c = state_correlator(&st, &label).unwrap();
                let t_op = observable_operator(&label, n); // wrong dual, just debugging magnitude
                let _ = (c, t_op);
            }
            // check raw correlator magnitudes
            let mut biggest = 0.0;
            for label in all_labels(n) {
                if label.n() != n { continue; }
                let c = state_correlator(&st, &label).unwrap();
                if c.norm() > biggest { biggest = c.norm(); }
            }
            println!("largest full correlator = {biggest:.4}");
        }
    }
}
