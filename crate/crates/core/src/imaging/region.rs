use std::collections::VecDeque;

use super::{IntensityMap, Pixel};

/// Connected analysis region around the target cell.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMask {
    /// Membership flag per grid cell, `[range][angle]`.
    pub members: Vec<bool>,
    pub anchor: Pixel,
    /// Member cells in raster order.
    pub pixels: Vec<Pixel>,
}

impl RegionMask {
    /// Member count M.
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members[index]
    }
}

/// Flood fill (8-connected) from `anchor` over cells whose intensity is at
/// least `10^(eta_db/10)` times the anchor's. The anchor is always a member.
pub fn extract_region(map: &IntensityMap, anchor: Pixel, eta_db: f64) -> RegionMask {
    let grid = &map.grid;
    let threshold = map.get(anchor) * 10f64.powf(eta_db / 10.0);
    let (nr, na) = (grid.n_range() as isize, grid.n_angle() as isize);

    let mut members = vec![false; grid.n_cells()];
    let mut queue = VecDeque::new();
    members[grid.index(anchor)] = true;
    queue.push_back(anchor);
    while let Some(p) = queue.pop_front() {
        for dr in -1isize..=1 {
            for da in -1isize..=1 {
                let (r, a) = (p.range as isize + dr, p.angle as isize + da);
                if (dr == 0 && da == 0) || r < 0 || a < 0 || r >= nr || a >= na {
                    continue;
                }
                let q = Pixel::new(r as usize, a as usize);
                let idx = grid.index(q);
                if !members[idx] && map.values[idx] >= threshold {
                    members[idx] = true;
                    queue.push_back(q);
                }
            }
        }
    }

    let pixels = members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| grid.pixel(i)).collect();
    RegionMask { members, anchor, pixels }
}
