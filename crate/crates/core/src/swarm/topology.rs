use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};

/// Static social topologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopologyKind {
    GlobalBest,
    /// Two neighbours, `i - 1` and `i + 1` modulo the swarm size.
    #[default]
    Ring,
    /// Four lattice neighbours on a wrapped, near-square grid.
    VonNeumann,
    /// Three distinct neighbours drawn once at initialization.
    Random3,
    /// A hub (particle 1) linked to everyone else.
    Wheel,
    /// Heap-indexed binary tree: parent and children.
    BinaryTree,
}

impl TopologyKind {
    pub fn min_particles(&self) -> usize {
        match self {
            TopologyKind::VonNeumann | TopologyKind::Random3 => 4,
            _ => 2,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TopologyKind::GlobalBest => "gbest",
            TopologyKind::Ring => "lbest-ring",
            TopologyKind::VonNeumann => "von-neumann",
            TopologyKind::Random3 => "random3",
            TopologyKind::Wheel => "wheel",
            TopologyKind::BinaryTree => "btree",
        }
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "gbest" | "global" => TopologyKind::GlobalBest,
            "lbest-ring" | "lbest" | "ring" => TopologyKind::Ring,
            "von-neumann" | "vonneumann" => TopologyKind::VonNeumann,
            "random3" | "random" => TopologyKind::Random3,
            "wheel" => TopologyKind::Wheel,
            "btree" | "binary-tree" => TopologyKind::BinaryTree,
            _ => return Err(Error::UnknownTopology(s.to_string())),
        })
    }
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-particle neighbour lists (0-based, ascending, never containing the
/// particle itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    neighbors: Vec<Vec<usize>>,
}

impl Topology {
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }
}

fn normalized(i: usize, mut list: Vec<usize>) -> Vec<usize> {
    list.retain(|&j| j != i);
    list.sort_unstable();
    list.dedup();
    list
}

pub fn initialize_topology<R: Rng + ?Sized>(
    kind: TopologyKind,
    kappa: usize,
    rng: &mut R,
) -> Result<Topology> {
    if kappa < kind.min_particles() {
        return Err(Error::Config(format!(
            "topology {kind} needs at least {} particles, got {kappa}",
            kind.min_particles()
        )));
    }
    let cols = (kappa as f64).sqrt().ceil() as usize;
    let neighbors = (0..kappa)
        .map(|i| {
            let raw = match kind {
                TopologyKind::GlobalBest => (0..kappa).collect(),
                TopologyKind::Ring => vec![(i + kappa - 1) % kappa, (i + 1) % kappa],
                TopologyKind::VonNeumann => vec![
                    (i + kappa - 1) % kappa,
                    (i + 1) % kappa,
                    (i + kappa - cols % kappa) % kappa,
                    (i + cols) % kappa,
                ],
                TopologyKind::Random3 => index::sample(rng, kappa - 1, 3)
                    .into_iter()
                    .map(|j| if j >= i { j + 1 } else { j })
                    .collect(),
                TopologyKind::Wheel if i == 0 => (1..kappa).collect(),
                TopologyKind::Wheel => vec![0],
                TopologyKind::BinaryTree => {
                    let mut v = Vec::with_capacity(3);
                    if i > 0 {
                        v.push((i - 1) / 2);
                    }
                    v.extend([2 * i + 1, 2 * i + 2].into_iter().filter(|&c| c < kappa));
                    v
                }
            };
            normalized(i, raw)
        })
        .collect();
    Ok(Topology { neighbors })
}
