//! Evaluates the three entropy indices on a few small graphs.

use texseg::entropy::{evaluate_index, IndexKind};
use texseg::patch::PatchGraph;

fn main() -> texseg::Result<()> {
    let graphs = [
        ("path P3", 3, vec![(0, 1), (1, 2)]),
        ("star K1,3", 4, vec![(0, 1), (0, 2), (0, 3)]),
        ("cycle C5", 5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        ("path P6", 6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
    ];
    let kinds = [IndexKind::ifv(0.5), IndexKind::ifp(0.5), IndexKind::Ide];
    println!("{:<10} {:>8} {:>8} {:>8}", "graph", "I_fV", "I_fP", "IDE");
    for (name, n, edges) in graphs {
        let e: Vec<_> = edges.iter().map(|&(a, b)| (a, b, 1.0)).collect();
        let g = PatchGraph::from_edges(n, &e, false)?;
        let vals = kinds
            .iter()
            .map(|&k| evaluate_index(&g, k).map(|v| format!("{v:>8.4}")))
            .collect::<texseg::Result<Vec<_>>>()?;
        println!("{name:<10} {}", vals.join(" "));
    }

    // IDE only makes sense on unweighted graphs
    let weighted = PatchGraph::from_edges(2, &[(0, 1, 1.5)], true)?;
    match evaluate_index(&weighted, IndexKind::Ide) {
        Err(e) => println!("weighted graph: {e}"),
        Ok(v) => println!("weighted graph: unexpectedly got {v}"),
    }
    Ok(())
}
