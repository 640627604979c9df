use super::{ResolutionGraph, Vertex};
use crate::{Error, Result};

/// Lowest-index rational (-1)-curve meeting at most two others.
pub fn contractible_vertex(g: &ResolutionGraph) -> Option<usize> {
    (0..g.len()).find(|&i| {
        let v = g.vertex(i);
        v.weight == -1 && v.genus == 0 && g.valency(i) <= 2
    })
}

/// Blows down vertex `i`: each neighbour gains +1 in weight, and two neighbours of a
/// valency-two vertex become adjacent.
///
/// Neighbour weights may reach zero here; [`blow_down_minimal`] rejects that outcome.
pub fn contract_vertex(g: &ResolutionGraph, i: usize) -> Result<ResolutionGraph> {
    let v = g.vertex(i);
    if v.weight != -1 || v.genus != 0 || g.valency(i) > 2 {
        return Err(Error::InvalidArgument(format!("vertex `{}` is not a contractible (-1)-curve", v.id)));
    }
    let neighbors = g.neighbors(i);
    let mut vertices: Vec<Vertex> = g.vertices().to_vec();
    for &j in &neighbors {
        vertices[j].weight += 1;
    }
    let mut edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(a, b)| a != i && b != i).collect();
    if let [a, b] = neighbors[..] {
        edges.push((a.min(b), a.max(b)));
    }
    vertices.remove(i);
    let shift = |k: usize| if k > i { k - 1 } else { k };
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (shift(a), shift(b))).collect();
    if vertices.is_empty() {
        return Ok(ResolutionGraph::empty());
    }
    Ok(ResolutionGraph { vertices, edges })
}

/// Repeatedly contracts rational (-1)-curves of valency at most two, lowest index first.
pub fn blow_down_minimal(g: &ResolutionGraph) -> Result<ResolutionGraph> {
    if !g.is_empty() && !g.is_tree() {
        return Err(Error::InvalidArgument("blow-down is implemented for trees only".into()));
    }
    let mut cur = g.clone();
    while let Some(i) = contractible_vertex(&cur) {
        cur = contract_vertex(&cur, i)?;
        if let Some(v) = cur.vertices().iter().find(|v| v.weight >= 0) {
            return Err(Error::NonMinimalRepresentable(v.id.clone()));
        }
    }
    Ok(cur)
}
