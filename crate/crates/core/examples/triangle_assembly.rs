//! Reassembles the limit height 2 zeta(3) / (3 zeta(2)) from the twelve
//! per-triangle log-integrals and prints the gap.

use equid_core::heights::{limit_height, TrianglePartition};
use equid_core::laurent::{polytope_log_integral, QuadratureConfig};

fn main() {
    let partition = TrianglePartition::standard();
    let cfg = QuadratureConfig {
        samples: 1 << 18,
        seed: 0,
        tol: 4e-4,
        ..Default::default()
    };
    let mut total = 0.0;
    for (triangle, class) in partition.pieces() {
        let report = polytope_log_integral(&class.polynomial(), triangle, &cfg).unwrap();
        println!(
            "{:?}: {:+.8} (converged: {})",
            class, report.estimate, report.converged
        );
        total += report.estimate;
    }
    println!("assembled: {total:.8}");
    println!("limit:     {:.8}", limit_height());
    println!("gap:       {:.2e}", (total - limit_height()).abs());
}
