use num_rational::Ratio;

use super::{CylinderRef, Origami};
use crate::error::{Error, Result};

/// Area fraction of the horizontal cylinder `x` covered by the vertical
/// cylinders in `fam`.
pub fn cylinder_proportion(o: &Origami, x: &CylinderRef, fam: &[CylinderRef]) -> Result<Ratio<u64>> {
    let fp = o.fingerprint();
    if x.fingerprint != fp || fam.iter().any(|c| c.fingerprint != fp) {
        return Err(Error::StaleCylinder("cylinder from another surface".into()));
    }
    if x.direction != (1, 0) || fam.iter().any(|c| c.direction != (0, 1)) {
        return Err(Error::StaleCylinder(
            "expected a horizontal cylinder and vertical cylinders".into(),
        ));
    }
    if x.squares.is_empty() {
        return Err(Error::StaleCylinder("empty cylinder".into()));
    }
    let mut covered = vec![false; o.n_squares()];
    for c in fam {
        for &s in &c.squares {
            covered[s] = true;
        }
    }
    let inside = x.squares.iter().filter(|&&s| covered[s]).count() as u64;
    Ok(Ratio::new(inside, x.squares.len() as u64))
}
