// Exact block transfer operator on step functions for the Bernoulli IFS.
//
// $ cargo run --example bernoulli_operator

use gapcert::bernoulli::{apply_block_operator, bv_norm, IfsParams, StepFunction};

fn main() -> gapcert::Result<()> {
    let params = IfsParams::new(2.0 / 3.0)?;
    let f = StepFunction::indicator_from(0.0);
    let g = apply_block_operator(&params, &f)?;
    println!("lambda=2/3 ell={} attractor={:?}", params.ell, params.attractor());
    println!("L0^ell 1_[0,inf): breakpoints {:?} values {:?}", g.breakpoints, g.values);

    // Iterating shrinks the variation geometrically.
    let params = IfsParams::new(0.618)?;
    let mut h = StepFunction::sign();
    for k in 0..8 {
        let bv = bv_norm(&h);
        println!("k={k} jumps={:<4} var={:.6} sup={:.6}", h.breakpoints.len(), bv.var, bv.sup);
        h = apply_block_operator(&params, &h)?;
    }
    Ok(())
}
