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

// least squares for real models
fn lstsq(rows: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let m = rows[0].len();
    let mut ata = vec![vec![0.0; m]; m];
    let mut aty = vec![0.0; m];
    for (r, row) in rows.iter().enumerate() {
        for i in 0..m {
            for j in 0..m { ata[i][j] += row[i]*row[j]; }
            aty[i] += row[i]*y[r];
        }
    }
    // gaussian
    for col in 0..m {
        let piv = (col..m).max_by(|&a,&b| ata[a][col].abs().total_cmp(&ata[b][col].abs())).unwrap();
        ata.swap(col, piv); aty.swap(col, piv);
        for r in col+1..m {
            let fak = ata[r][col]/ata[col][col];
            for c in col..m { ata[r][c] -= fak*ata[col][c]; }
            aty[r] -= fak*aty[col];
        }
    }
    let mut x = vec![0.0; m];
    for col in (0..m).rev() {
        let mut acc = aty[col];
        for c in col+1..m { acc -= ata[col][c]*x[c]; }
        x[col] = acc/ata[col][col];
    }
    x
}

fn main() {
    let i = C64::new(0.0,1.0);
    let od = 2.0/3.0f64.sqrt();
    let od2 = (8.0f64/3.0).sqrt();
    for nu in [2.5f64, 3.0, 6.0, 10.0] {
        let g = |tau: f64| 1.0/(nu*tau);
        println!("==== nu = {nu}");
        // ---- mode 0: c2 = i(√3 τ/ν)[x τ² F1 - y F0]; c3 = u F0 + v τ² F1' ... fit generic
        let taus: Vec<f64> = (0..10).map(|k| 0.2 + 0.17*k as f64).collect();
        let mut rows2 = vec![]; let mut y2 = vec![];
        let mut rows3 = vec![]; let mut y3 = vec![];
        for &tau in &taus {
            let h = 1e-6;
            let cm = dbg_mode(nu, 0, tau-h);
            let cp = dbg_mode(nu, 0, tau+h);
            let c0 = dbg_mode(nu, 0, tau);
            let dc1 = (cp[0]-cm[0])/(2.0*h);
            let dc2 = (cp[1]-cm[1])/(2.0*h);
            let c2t = (dc1 + 6.0*g(tau)*c0[0])/(i*od);
            let c3t = (i*od*c0[0] - 2.0*g(tau)*c2t - dc2)/(i*od2);
            // model c2/(i√3τ/ν) = x·τ²F1 + y·F0
            let scale = 3.0f64.sqrt()*tau/nu;
            y2.push((c2t/(i*scale)).re);
            rows2.push(vec![tau*tau*f(nu,0,1,tau), f(nu,0,0,tau)]);
            // model c3 = u·F0 + w·τ²F0 + v·τ²F1 + z·τ⁴F2   (allow const+τ² on F0)
            y3.push(c3t.re);
            rows3.push(vec![f(nu,0,0,tau), tau*tau*f(nu,0,0,tau), tau*tau*f(nu,0,1,tau), tau.powi(4)*f(nu,0,2,tau)]);
        }
        let x2 = lstsq(&rows2, &y2);
        println!("mode0 c2: coef(τ²F1) = {:+.8}, coef(F0) = {:+.8}", x2[0], x2[1]);
        println!("   display: {:+.8}, {:+.8}", 2.0*nu*nu/((3.0+2.0*nu)*(2.0+3.0*nu)), -(3.0+nu));
        let x3 = lstsq(&rows3, &y3);
        println!("mode0 c3: F0 const {:+.8}, F0 τ² {:+.8}, F1 τ² {:+.8}, F2 τ⁴ {:+.8}", x3[0], x3[1], x3[2], x3[3]);
        let s2 = std::f64::consts::SQRT_2;
        println!("   display: {:+.8}, {:+.8}, {:+.8}, {:+.8}",
           3.0*(nu+2.0)*(nu+3.0)/(2.0*s2*nu*nu),
           2.0*nu*nu/(2.0*s2*nu*nu),
           -3.0*(nu+2.0)*(5.0*nu+8.0)/(s2*(2.0*nu+3.0)*(3.0*nu+2.0)),
           4.0*s2*nu*nu*(nu+2.0)/((2.0*nu+3.0)*(3.0*nu+2.0)*(5.0*nu+2.0)));
    }
}
