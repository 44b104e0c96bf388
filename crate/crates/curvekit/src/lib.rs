pub mod curves;
pub mod dotgraph;
pub mod generate;
pub mod geodesics;
pub mod ladder;
pub mod surface;
pub mod surgery;
