use super::Sentence;

/// Returns true when every gold arc is projective, i.e. the head dominates
/// every token strictly between itself and its dependent. With the root at
/// position 0 this is equivalent to the absence of crossing arcs.
///
/// Sentences without a gold tree are reported as projective.
pub fn is_projective(sentence: &Sentence) -> bool {
    let Some(heads) = sentence.gold_heads() else {
        return true;
    };
    let n = sentence.len();

    let dominates = |ancestor: usize, mut node: usize| {
        let mut steps = 0;
        while node != ancestor {
            if node == 0 || steps > n {
                return false;
            }
            node = heads[node];
            steps += 1;
        }
        true
    };

    (1..=n).all(|dep| {
        let head = heads[dep];
        let (lo, hi) = if head < dep { (head, dep) } else { (dep, head) };
        (lo + 1..hi).all(|between| dominates(head, between))
    })
}
