//! Canonical codes, isomorphisms and enumeration of small graphs.

use grprop::graphs::{canonical_form, enumerate_graphs, find_iso, ArityBound, Biprofile, Color, ColorSet, ColoredGraph, IsoFlavor, Scheme};
use grprop::substitution::graft;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Color(0);
    let split = ColoredGraph::corolla(&Biprofile::new(vec![c], vec![c, c]));
    let merge = ColoredGraph::corolla(&Biprofile::new(vec![c, c], vec![c]));
    let diamond = graft(&split, &ColoredGraph::corolla(&Biprofile::unary(c)))?;
    println!("split then unary: {} vertices, code {}", diamond.vertex_count(), canonical_form(&diamond)?);
    println!("split vs merge strictly isomorphic: {}", find_iso(&split, &merge, IsoFlavor::Strict)?.is_some());

    let colors = ColorSet::range(1);
    let bp = Biprofile::unary(c);
    for scheme in Scheme::ALL {
        let n = enumerate_graphs(scheme, &colors, &bp, 3, ArityBound::new(2, 2)).len();
        println!("{scheme}: {n} graphs on {bp} with at most 3 vertices");
    }
    Ok(())
}
