//! Gauss sums over F_8 and F_9: ν_π(g(T^{-i})) equals the digit sum S_p(i).

use std::sync::Arc;

use tracediv::ramified::RamifiedRing;
use tracediv::FieldTower;

fn main() -> tracediv::Result<()> {
    for (p, e) in [(2, 3), (3, 2)] {
        let ring = RamifiedRing::with_default_precision(Arc::new(FieldTower::new(p, e, 1)?))?;
        for row in ring.stickelberger_check()? {
            println!(
                "q={} i={}: S_p(i)={} expected {} measured {} {}",
                row.q,
                row.i,
                row.digit_sum,
                row.expected,
                row.measured,
                if row.pass { "ok" } else { "MISMATCH" }
            );
        }
        let f = ring.verify_fourier_expansion()?;
        println!("Fourier expansion over F_{}: {} points, {} violations", f.q, f.points_checked, f.violations.len());
    }
    Ok(())
}
