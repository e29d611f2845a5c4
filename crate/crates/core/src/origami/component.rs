use super::{minus_id_involutions, realize, spin_parity, Origami};
use crate::diagram::CylinderDiagram;
use crate::error::{Error, Result};
use crate::stratum::ComponentLabel;

/// Hyperelliptic component test: an involution acting by `-Id` with
/// quotient a sphere, whose action on the zeros is either a single fixed
/// zero or a pairing of all zeros. Surfaces of `H(2,2)^odd` can be
/// hyperelliptic with both zeros fixed; those are not in the component.
pub fn is_hyperelliptic(o: &Origami) -> Result<bool> {
    let zeros: Vec<u32> = o.vertex_orders().into_iter().filter(|&k| k > 0).collect();
    Ok(minus_id_involutions(o)?.iter().any(|inv| {
        if inv.quotient_genus != 0 {
            return false;
        }
        let fixed_zeros = inv.fixed_points.corners.iter().filter(|&&k| k > 0).count();
        match zeros.len() {
            1 => fixed_zeros == 1,
            _ => fixed_zeros == 0 && 2 * inv.exchanged_zero_orders.len() == zeros.len(),
        }
    }))
}

pub fn component_of_origami(o: &Origami) -> Result<ComponentLabel> {
    let zeros: Vec<u32> = o.vertex_orders().into_iter().filter(|&k| k > 0).collect();
    let genus = o.genus();
    match genus {
        0 | 1 | 2 => return Ok(ComponentLabel::Unique),
        3 => {}
        g => return Err(Error::Unsupported(format!("components in genus {g}"))),
    }
    // genus 3: H(4) and H(2,2) split into hyp and odd, the rest is connected
    let split = zeros == [4] || zeros == [2, 2];
    if !split {
        return Ok(ComponentLabel::Unique);
    }
    if is_hyperelliptic(o)? {
        return Ok(ComponentLabel::Hyp);
    }
    Ok(match spin_parity(o)? {
        0 => ComponentLabel::Even,
        _ => ComponentLabel::Odd,
    })
}

/// Connected component of the stratum containing every surface with this
/// cylinder diagram.
pub fn component_of(d: &CylinderDiagram) -> Result<ComponentLabel> {
    let s = d.singularity_profile()?;
    if s.genus() > 3 {
        return Err(Error::Unsupported(format!("components of {s}")));
    }
    if s.genus() <= 2 || !(s.zero_orders() == [4] || s.zero_orders() == [2, 2]) {
        return Ok(ComponentLabel::Unique);
    }
    component_of_origami(&realize(d, None)?)
}
