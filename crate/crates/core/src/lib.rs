//! Stack layouts (book embeddings) and queue layouts of graphs built
//! recursively from layered separators, with independent verification,
//! brute-force optima for tiny graphs, and generators for the graph
//! families the constructions target.
//!
//! ```
//! use layersep::{generators, graph::bfs_layering, planar::PlanarProvider};
//! use layersep::{stack::construct_stack_layout, verify::check_stack_validity};
//!
//! let (g, rotation) = generators::grid(4, 4);
//! let provider = PlanarProvider::new(&g, &rotation, 0).unwrap();
//! let layering = bfs_layering(&g, 0).unwrap();
//! let layout = construct_stack_layout(&g, &layering, &provider, 2).unwrap();
//! assert!(check_stack_validity(&g, &layout).is_empty());
//! assert!(layout.channel_count() <= 5 * 2 * 4);
//! ```

pub mod bench;
pub mod error;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod oracle;
pub mod planar;
pub mod queue;
pub mod render;
pub mod separator;
pub mod stack;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, Layering};
pub use layout::{ChannelClass, ChannelId, LayoutKind, LinearLayout};
pub use separator::{SeparatorCert, SeparatorProvider};
