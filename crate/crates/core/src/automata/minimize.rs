use std::collections::HashMap;

use crate::automata::Dfa;

/// Moore partition refinement. The result is canonical: states are
/// numbered breadth-first from the initial state.
pub fn minimize(d: &Dfa) -> Dfa {
    let d = d.canonical();
    let n = d.num_states();
    let k = d.num_classes();

    let mut block: Vec<usize> = (0..n).map(|s| usize::from(d.is_accepting(s))).collect();
    let mut blocks = block.iter().copied().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for s in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(block[s]);
            sig.extend((0..k).map(|c| block[d.step(s, c)]));
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        let count = ids.len();
        block = next;
        if count == blocks {
            break;
        }
        blocks = count;
    }

    let mut delta = vec![Vec::new(); blocks];
    let mut accepting = vec![false; blocks];
    for s in 0..n {
        let b = block[s];
        if delta[b].is_empty() {
            delta[b] = (0..k).map(|c| block[d.step(s, c)]).collect();
            accepting[b] = d.is_accepting(s);
        }
    }
    Dfa::new(d.named().to_vec(), delta, block[d.initial()], accepting).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::activity::Activity;

    #[test]
    fn merges_equivalent_states() {
        // states 1 and 2 are both accepting sinks
        let a = Activity::named("a");
        let d = Dfa::new(vec![a], vec![vec![1, 2], vec![1, 1], vec![2, 2]], 0, vec![false, true, true]);
        let m = minimize(&d);
        assert_eq!(m.num_states(), 2);
        assert_eq!(minimize(&m), m);
    }
}
