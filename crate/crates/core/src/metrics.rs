//! Global transitivity: the fraction of wedges that close into triangles.

use thiserror::Error;

use crate::count::TriangleCount;
use crate::graph::DegreeOrder;

/// Number of two-edge paths, `sum over v of C(deg v, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WedgeCount(pub u64);

impl WedgeCount {
    pub fn get(self) -> u64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("wedge count does not fit in 64 bits")]
    Overflow,
    #[error("{triangles} triangles cannot come from only {wedges} wedges")]
    InconsistentCounts { triangles: u64, wedges: u64 },
}

pub fn wedge_count(degrees: &DegreeOrder) -> Result<WedgeCount, MetricsError> {
    let mut total: u64 = 0;
    for &d in degrees.degrees() {
        let d = u128::from(d);
        let wedges =
            u64::try_from(d * d.saturating_sub(1) / 2).map_err(|_| MetricsError::Overflow)?;
        total = total.checked_add(wedges).ok_or(MetricsError::Overflow)?;
    }
    Ok(WedgeCount(total))
}

/// `3t / w`, or 0 for a graph without wedges.
pub fn transitivity(triangles: TriangleCount, wedges: WedgeCount) -> Result<f64, MetricsError> {
    let closed = u128::from(triangles.0) * 3;
    if closed > u128::from(wedges.0) {
        return Err(MetricsError::InconsistentCounts {
            triangles: triangles.0,
            wedges: wedges.0,
        });
    }
    if wedges.0 == 0 {
        return Ok(0.0);
    }
    Ok(closed as f64 / wedges.0 as f64)
}
