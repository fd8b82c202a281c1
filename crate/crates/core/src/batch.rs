//! Batch entry points. Items run on the rayon pool with the `parallel`
//! feature and in order without it; results are in input order either way.

use crate::error::{IoError, PipelineError};
use crate::io::generate::random_kplanar;
use crate::pipeline::{certify, rewrite, Certificate};
use crate::topo::TopologicalGraph;

macro_rules! par_map {
    ($items: expr, $f: expr) => {{
        #[cfg(feature = "parallel")]
        {
            use rayon::iter::{IntoParallelRefIterator as _, ParallelIterator as _};
            $items.par_iter().map($f).collect()
        }

        #[cfg(not(feature = "parallel"))]
        {
            $items.iter().map($f).collect()
        }
    }};
}

pub type RewriteResult = Result<(TopologicalGraph, Certificate), PipelineError>;

/// True when batch calls run on the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn rewrite_all(inputs: &[TopologicalGraph], k: usize) -> Vec<RewriteResult> {
    par_map!(inputs, |g: &TopologicalGraph| rewrite(g, k))
}

/// `pairs` holds (input, output) drawings.
pub fn certify_all(pairs: &[(TopologicalGraph, TopologicalGraph)], k: usize) -> Vec<Certificate> {
    par_map!(pairs, |p: &(TopologicalGraph, TopologicalGraph)| certify(&p.0, &p.1, k))
}

/// One random drawing per seed.
pub fn generate_all(n: usize, m: usize, k: usize, seeds: &[u64]) -> Vec<Result<TopologicalGraph, IoError>> {
    par_map!(seeds, |&s: &u64| random_kplanar(n, m, k, s))
}

/// Rewrite applied to every item in order on the calling thread.
pub fn rewrite_all_sequential(inputs: &[TopologicalGraph], k: usize) -> Vec<RewriteResult> {
    inputs.iter().map(|g| rewrite(g, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn batch_matches_sequential() {
        let inputs: Vec<_> = fixtures::named().into_iter().map(|x| x.2).collect();
        let a = rewrite_all(&inputs, 3);
        let b = rewrite_all_sequential(&inputs, 3);
        assert_eq!(a.len(), inputs.len());
        for (x, y) in a.iter().zip(&b) {
            let (x, y) = (x.as_ref().unwrap(), y.as_ref().unwrap());
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, y.1);
        }
    }

    #[test]
    fn generated_batch_certifies() {
        let seeds: Vec<u64> = (0..4).collect();
        let graphs: Vec<_> = generate_all(16, 30, 3, &seeds)
            .into_iter()
            .map(Result::unwrap)
            .collect();
        let pairs: Vec<_> = rewrite_all(&graphs, 3)
            .into_iter()
            .zip(&graphs)
            .map(|(r, g)| (g.clone(), r.unwrap().0))
            .collect();
        assert!(certify_all(&pairs, 3).iter().all(|c| c.pass));
    }
}
