//! Tabulate the similarity kernel sigma_alpha together with its
//! integral f_alpha and first moment, the three functions the
//! free-boundary construction is made of.

use fracstefan::series::kernel_rows;
use fracstefan::special::{KernelOrder, Truncation};

fn main() -> fracstefan::Result<()> {
    let a = KernelOrder::new(0.5)?;
    let ws: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    println!("alpha = 0.5");
    println!("{:>6} {:>22} {:>22} {:>22}", "w", "sigma", "f", "moment");
    for row in kernel_rows(a, &ws, &Truncation::default())? {
        println!("{:>6} {:>22.15e} {:>22.15e} {:>22.15e}", row.w, row.sigma, row.f, row.moment);
    }
    Ok(())
}
