//! Named graph families and benchmark rows comparing channel counts with
//! the `w·ℓ·⌊log₂ n⌋` bound.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators;
use crate::graph::{bfs_layering, Graph, Layering};
use crate::layout::{channel_bound, construct, Construction, LayoutKind};
use crate::oracle::{min_layout_number, Enumeration, ORACLE_MAX_EDGES, ORACLE_MAX_VERTICES};
use crate::planar::{PlanarProvider, RotationSystem};
use crate::separator::{ExactProvider, SeparatorProvider};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `param × param` grid.
    Grid,
    /// `param × param × 2` grid.
    GridNn2,
    /// Stacked triangulation on `param` vertices.
    Triangulation,
    /// Map graph grown on a `param × param` grid host, at most 4 nations per host vertex.
    Map,
    Complete,
    Cycle,
    Path,
    /// Star with `param` leaves.
    Star,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Grid,
        Family::GridNn2,
        Family::Triangulation,
        Family::Map,
        Family::Complete,
        Family::Cycle,
        Family::Path,
        Family::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::GridNn2 => "grid-nn2",
            Family::Triangulation => "triangulation",
            Family::Map => "map",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Star => "star",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

/// A generated graph, with an embedding when the family is plane.
#[derive(Debug, Clone)]
pub struct Instance {
    pub family: Family,
    pub param: usize,
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
}

pub fn instance(family: Family, param: usize, seed: u64) -> Result<Instance> {
    let (graph, rotation) = match family {
        Family::Grid => {
            let (g, r) = generators::grid(param, param);
            (g, Some(r))
        }
        Family::GridNn2 => (generators::grid_nn2(param), None),
        Family::Triangulation => {
            let (g, r) = generators::stacked_triangulation(param, seed)?;
            (g, Some(r))
        }
        Family::Map => {
            let faces = generators::grid_host_faces(param, param);
            let nations = generators::random_map_nations(param, param, (3 * faces).div_ceil(4), 4, seed)?;
            (generators::map_graph_from_grid_host(param, param, &nations, 4)?, None)
        }
        Family::Complete => (generators::complete(param), None),
        Family::Cycle => (generators::cycle(param), None),
        Family::Path => {
            let (g, r) = generators::path(param);
            (g, Some(r))
        }
        Family::Star => {
            let (g, r) = generators::star(param);
            (g, Some(r))
        }
    };
    Ok(Instance {
        family,
        param,
        graph,
        rotation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatorChoice {
    Exact,
    Planar,
}

impl FromStr for SeparatorChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SeparatorChoice::Exact),
            "planar" => Ok(SeparatorChoice::Planar),
            _ => Err(Error::InvalidArgument(format!("unknown separator {s:?}"))),
        }
    }
}

/// Layering and provider for a graph: BFS from `root`, and the two-path
/// separator when an embedding is supplied and requested.
pub fn prepare(
    graph: &Graph,
    rotation: Option<&RotationSystem>,
    choice: SeparatorChoice,
    root: usize,
    ell: Option<usize>,
) -> Result<(Layering, Box<dyn SeparatorProvider>)> {
    match choice {
        SeparatorChoice::Planar => {
            let rotation = rotation.ok_or_else(|| {
                Error::InvalidArgument("the planar separator needs an embedding (rotation system)".into())
            })?;
            let provider = PlanarProvider::new(graph, rotation, root)?;
            Ok((provider.layering().clone(), Box::new(provider)))
        }
        SeparatorChoice::Exact => Ok((bfs_layering(graph, root)?, Box::new(ExactProvider { ell }))),
    }
}

/// Planar when an embedding exists, exact otherwise.
pub fn default_choice(inst: &Instance) -> SeparatorChoice {
    if inst.rotation.is_some() {
        SeparatorChoice::Planar
    } else {
        SeparatorChoice::Exact
    }
}

/// Builds a layout for an instance with BFS layering from vertex 0, with ℓ
/// taken from the widest certificate.
pub fn build(inst: &Instance, kind: LayoutKind, choice: SeparatorChoice) -> Result<(Layering, Construction)> {
    let (layering, provider) = prepare(&inst.graph, inst.rotation.as_ref(), choice, 0, None)?;
    let c = construct(kind, &inst.graph, &layering, provider.as_ref(), None)?;
    Ok((layering, c))
}

pub const CSV_HEADER: &str = "family,param,n,m,kind,separator,ell,channels_used,bound,oracle_opt";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub family: String,
    pub param: usize,
    pub n: usize,
    pub m: usize,
    pub kind: LayoutKind,
    pub separator: &'static str,
    pub ell: usize,
    pub channels_used: usize,
    pub bound: usize,
    pub oracle_opt: Option<usize>,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.param,
            self.n,
            self.m,
            self.kind,
            self.separator,
            self.ell,
            self.channels_used,
            self.bound,
            self.oracle_opt.map(|o| o.to_string()).unwrap_or_default()
        )
    }
}

pub fn bench_row(inst: &Instance, kind: LayoutKind, choice: SeparatorChoice) -> Result<BenchRow> {
    let (_, c) = build(inst, kind, choice)?;
    let g = &inst.graph;
    let oracle_opt = if g.n() <= ORACLE_MAX_VERTICES && g.m() <= ORACLE_MAX_EDGES {
        Some(min_layout_number(kind, g, Enumeration::Reduced)?.value)
    } else {
        None
    };
    Ok(BenchRow {
        family: inst.family.to_string(),
        param: inst.param,
        n: g.n(),
        m: g.m(),
        kind,
        separator: match choice {
            SeparatorChoice::Exact => "exact",
            SeparatorChoice::Planar => "planar",
        },
        ell: c.ell,
        channels_used: c.layout.channel_count(),
        bound: channel_bound(kind, c.ell, g.n()),
        oracle_opt,
    })
}
