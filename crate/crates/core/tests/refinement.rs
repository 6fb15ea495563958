//! Convergence of the polygonal outline towards the ellipse as circles are
//! added. Monotonicity is asserted; the second-order constant is reported.

use envelope_core::{analytic_ellipse, hausdorff_distance, polygonal_envelope};

#[test]
fn polygonal_outline_refines_at_second_order() {
    let ellipse = analytic_ellipse(4096);
    let ns = [7usize, 15, 31, 63, 127];
    let d: Vec<f64> = ns
        .iter()
        .map(|&n| hausdorff_distance(&polygonal_envelope(n).unwrap().sample(64), &ellipse).unwrap())
        .collect();

    for w in d.windows(2) {
        assert!(w[1] <= w[0], "{d:?}");
    }

    // least-squares fit of d = C / n² and of the log-log slope
    let inv_sq: Vec<f64> = ns.iter().map(|&n| 1.0 / (n * n) as f64).collect();
    let c = inv_sq.iter().zip(&d).map(|(u, v)| u * v).sum::<f64>() / inv_sq.iter().map(|u| u * u).sum::<f64>();
    let (lx, ly): (Vec<f64>, Vec<f64>) = ns.iter().zip(&d).map(|(&n, v)| ((n as f64).ln(), v.ln())).unzip();
    let (mx, my) = (lx.iter().sum::<f64>() / 5.0, ly.iter().sum::<f64>() / 5.0);
    let slope = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / lx.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    for (n, v) in ns.iter().zip(&d) {
        println!("n = {n:>3}: hausdorff {v:.4e}, n² d = {:.4}", v * (n * n) as f64);
    }
    println!("fitted C = {c:.4}, log-log slope = {slope:.3}");
}
