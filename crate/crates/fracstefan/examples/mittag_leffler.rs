//! Evaluate the three-parametric Mittag-Leffler function E_{alpha,m,l}
//! at parameter choices with known closed forms, then at the kernel
//! family used by the similarity solutions.

use fracstefan::special::{ml_eval_with_terms, MLParams, Truncation};

fn main() -> fracstefan::Result<()> {
    let tr = Truncation::default();

    // E_{1,1,0}(z) = e^z
    let p = MLParams::new(1.0, 1.0, 0.0)?;
    for z in [-1.0, 0.0, 1.0, 3.0] {
        let (v, terms) = ml_eval_with_terms(&p, z, &tr)?;
        println!("E_{{1,1,0}}({z}) = {v} (exp(z) = {}, {terms} terms)", z.exp());
    }

    // E_{1,2,1}(-z^2/...) relates to the Gaussian kernel; here the
    // kernel family m = 1 + 1/alpha, l = 1 for a fractional order
    let alpha = 0.6;
    let p = MLParams::sigma_family(alpha)?;
    for w in [0.5, 1.0, 2.0, 4.0] {
        let z = -f64::powf(w, 1.0 + alpha) / (1.0 + alpha);
        let (v, terms) = ml_eval_with_terms(&p, z, &tr)?;
        println!("E_{{0.6, 1+1/0.6, 1}}({z:.6}) = {v} ({terms} terms)");
    }
    Ok(())
}
