use super::CoreMatrix;
use crate::error::{Error, Result};
use crate::hwmodel::{HardwareConfig, SlotId};

/// Maps logical cores onto physical slots, bottom-up through the router tree.
///
/// At each level the current units (cores, then groups of cores) are packed
/// into `ceil(units / b)` groups of `b`. A group is seeded with the remaining
/// unit that has the most connections to the other remaining units and
/// grown with the unit most connected to its members; ties go to the lower
/// index. A unit's position inside its group gives one base-`b` digit of the
/// slot of every core it contains. Filling groups completely keeps the
/// group count minimal, so any `cores <= b^L` fits.
pub fn assign_slots(e: &CoreMatrix<u32>, cfg: &HardwareConfig) -> Result<Vec<SlotId>> {
    let cores = e.size();
    if cores > cfg.total_slots() as usize {
        return Err(Error::Capacity { needed: cores, available: cfg.total_slots() as usize });
    }
    let b = cfg.b() as usize;

    // symmetric connection weight between units
    let mut weight: Vec<Vec<u64>> = (0..cores)
        .map(|i| {
            (0..cores).map(|j| if i == j { 0 } else { e.get(i, j) as u64 + e.get(j, i) as u64 }).collect()
        })
        .collect();
    let mut units: Vec<Vec<usize>> = (0..cores).map(|c| vec![c]).collect();
    let mut slot = vec![0u64; cores];
    let mut place_value = 1u64;

    while units.len() > 1 {
        let groups = pack_level(&weight, b);
        for group in &groups {
            for (digit, &u) in group.iter().enumerate() {
                for &c in &units[u] {
                    slot[c] += digit as u64 * place_value;
                }
            }
        }
        weight = groups
            .iter()
            .map(|g| {
                groups
                    .iter()
                    .map(|h| {
                        if std::ptr::eq(g, h) {
                            0
                        } else {
                            g.iter()
                                .flat_map(|&u| h.iter().map(move |&v| (u, v)))
                                .map(|(u, v)| weight[u][v])
                                .sum()
                        }
                    })
                    .collect()
            })
            .collect();
        units = groups.iter().map(|g| g.iter().flat_map(|&u| units[u].iter().copied()).collect()).collect();
        place_value *= b as u64;
    }
    Ok(slot.into_iter().map(|s| SlotId(s as u32)).collect())
}

/// Partitions unit indices into `ceil(len / b)` groups, all full but the last.
fn pack_level(weight: &[Vec<u64>], b: usize) -> Vec<Vec<usize>> {
    let count = weight.len();
    let mut remaining: Vec<usize> = (0..count).collect();
    let mut groups = Vec::with_capacity(count.div_ceil(b));
    while !remaining.is_empty() {
        let seed = *remaining
            .iter()
            .max_by_key(|&&u| {
                let total: u64 = remaining.iter().map(|&v| weight[u][v]).sum();
                (total, std::cmp::Reverse(u))
            })
            .expect("non-empty");
        remaining.retain(|&u| u != seed);
        let mut group = vec![seed];
        while group.len() < b && !remaining.is_empty() {
            let next = *remaining
                .iter()
                .max_by_key(|&&u| {
                    let link: u64 = group.iter().map(|&g| weight[u][g]).sum();
                    (link, std::cmp::Reverse(u))
                })
                .expect("non-empty");
            remaining.retain(|&u| u != next);
            group.push(next);
        }
        groups.push(group);
    }
    groups
}
