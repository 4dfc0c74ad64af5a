//! Substituting graphs into the vertices of a graph.

use grprop::graphs::{canonical_form, Biprofile, Color, ColoredGraph};
use grprop::substitution::{compose_substitution_data, graft, substitute, SubstitutionData};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = Color(0);
    let unary = ColoredGraph::corolla(&Biprofile::unary(c));
    let chain = graft(&unary, &unary)?;

    let outer = SubstitutionData::new(chain.clone(), vec![chain.clone(), ColoredGraph::edge(c)])?;
    let k = substitute(&outer)?;
    println!("chain with a chain and an edge substituted: {} vertices", k.vertex_count());

    let inner = SubstitutionData::new(k.clone(), vec![chain.clone(), unary.clone()])?;
    let composed = compose_substitution_data(&inner, &outer)?;
    let twice = substitute(&inner)?;
    let once = substitute(&composed)?;
    println!("in two steps: {} vertices; composed first: {} vertices", twice.vertex_count(), once.vertex_count());
    println!("same graph: {}", canonical_form(&twice)? == canonical_form(&once)?);
    Ok(())
}
