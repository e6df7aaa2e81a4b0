//! One module per subcommand, each exposing a `run` entry point that maps
//! argument structs to library calls and renders the results.

pub mod bench;
pub mod hash;
pub mod oracle;
pub mod stats;
