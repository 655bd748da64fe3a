//! MIMO virtual-array geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two virtual elements closer than this are considered coincident.
pub const OVERLAP_TOLERANCE: f64 = 1e-9;

/// Linear MIMO array along the x axis and its virtual (sum-coordinate)
/// equivalent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayLayout {
    pub tx_positions: Vec<f64>,
    pub rx_positions: Vec<f64>,
    /// Sorted ascending, `tx_positions.len() * rx_positions.len()` entries.
    pub virtual_positions: Vec<f64>,
    pub wavelength: f64,
}

impl ArrayLayout {
    /// Number of virtual channels.
    pub fn len(&self) -> usize {
        self.virtual_positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.virtual_positions.is_empty()
    }

    /// Three transmitters at 2λ and four receivers at λ/2, which fill a
    /// 12-element uniform λ/2 virtual array.
    pub fn mimo_3x4(wavelength: f64) -> Result<Self> {
        let tx: Vec<f64> = (0..3).map(|i| i as f64 * 2.0 * wavelength).collect();
        let rx: Vec<f64> = (0..4).map(|i| i as f64 * 0.5 * wavelength).collect();
        build_virtual_array(&tx, &rx, wavelength)
    }
}

/// Forms every transmitter/receiver sum position and rejects layouts in
/// which two pairs land on the same virtual element.
pub fn build_virtual_array(tx: &[f64], rx: &[f64], wavelength: f64) -> Result<ArrayLayout> {
    if tx.is_empty() || rx.is_empty() {
        return Err(Error::InvalidParameter("transmitter and receiver lists must be non-empty".into()));
    }
    if tx.iter().chain(rx).any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("element positions must be finite".into()));
    }
    if !(wavelength.is_finite() && wavelength > 0.0) {
        return Err(Error::InvalidParameter(format!("wavelength {wavelength} must be positive")));
    }

    let mut sums: Vec<(f64, (usize, usize))> = tx
        .iter()
        .enumerate()
        .flat_map(|(i, &xt)| rx.iter().enumerate().map(move |(j, &xr)| (xt + xr, (i, j))))
        .collect();
    sums.sort_by(|a, b| a.0.total_cmp(&b.0));

    for pair in sums.windows(2) {
        if (pair[1].0 - pair[0].0).abs() < OVERLAP_TOLERANCE {
            return Err(Error::OverlappingVirtualElements {
                position: pair[0].0,
                first: pair[0].1,
                second: pair[1].1,
            });
        }
    }

    Ok(ArrayLayout {
        tx_positions: tx.to_vec(),
        rx_positions: rx.to_vec(),
        virtual_positions: sums.into_iter().map(|(x, _)| x).collect(),
        wavelength,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MM: f64 = 1e-3;

    #[test]
    fn three_by_four_fills_uniform_half_wavelength_array() {
        let tx = [0.0, 7.6 * MM, 15.2 * MM];
        let rx = [0.0, 1.9 * MM, 3.8 * MM, 5.7 * MM];
        let layout = build_virtual_array(&tx, &rx, 3.8 * MM).unwrap();
        assert_eq!(layout.len(), 12);
        for (k, x) in layout.virtual_positions.iter().enumerate() {
            assert!((x - k as f64 * 1.9 * MM).abs() < 1e-12, "element {k} at {x}");
        }
    }

    #[test]
    fn single_pair_is_identity() {
        let layout = build_virtual_array(&[0.0], &[0.0], 1.0).unwrap();
        assert_eq!(layout.virtual_positions, vec![0.0]);
    }

    #[test]
    fn colliding_sums_are_rejected() {
        let err = build_virtual_array(&[0.0, 1.9 * MM], &[0.0, 1.9 * MM], 3.8 * MM).unwrap_err();
        match err {
            Error::OverlappingVirtualElements { position, .. } => {
                assert!((position - 1.9 * MM).abs() < 1e-12)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_or_non_finite_input_is_invalid() {
        assert!(build_virtual_array(&[], &[0.0], 1.0).is_err());
        assert!(build_virtual_array(&[f64::NAN], &[0.0], 1.0).is_err());
    }

    #[test]
    fn mimo_3x4_spacing_is_half_wavelength() {
        let lambda = crate::SPEED_OF_LIGHT / 79e9;
        let layout = ArrayLayout::mimo_3x4(lambda).unwrap();
        for w in layout.virtual_positions.windows(2) {
            assert!((w[1] - w[0] - lambda / 2.0).abs() < 1e-9);
        }
    }
}
