//! Recomputes every edge by scanning all vertex pairs with exact
//! arithmetic and compares against the grid-accelerated build. Slow but
//! total; pass construction names to pick the graphs (default: J K L W M).

use udg::{build, ConstructionId};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<ConstructionId> = if args.is_empty() {
        vec![
            ConstructionId::J,
            ConstructionId::K,
            ConstructionId::L,
            ConstructionId::W,
            ConstructionId::M,
        ]
    } else {
        args.iter()
            .map(|a| a.parse().unwrap_or_else(|e| panic!("{e}")))
            .collect()
    };
    for id in ids {
        let g = build(id);
        let start = std::time::Instant::now();
        let ok = g.verify_edges_exhaustive();
        println!(
            "{id}: {} vertices, {} edges, exhaustive={} ({:.1?})",
            g.vertex_count(),
            g.edge_count(),
            ok,
            start.elapsed()
        );
        assert!(ok);
    }
}
