//! Named permutation families.

use crate::error::{precondition, Error, Result};
use crate::perm::{Permutation, PointMap, RangePermutation};

/// `σ_{n,k}`: `1 ↦ n`, `i ↦ i+1` on `n..k-1`, `k ↦ n-1`, `j ↦ j-1` on `2..n-1`.
/// With `n = 2` this is the shift `i ↦ i+1`; with `n = k` it is `1 ↦ k`, `j ↦ j-1`.
pub fn family_sigma_nk(n: usize, k: usize) -> Result<Permutation> {
    if k < 4 {
        return Err(Error::DegreeTooSmall { min: 4, got: k });
    }
    if n < 2 || n > k {
        return Err(precondition(format!("σ_{{n,k}} needs 2 <= n <= k, got n = {n}, k = {k}")));
    }
    let images = (1..=k)
        .map(|i| match i {
            1 => n,
            _ if i == k => n - 1,
            _ if i >= n => i + 1,
            _ => i - 1,
        })
        .collect();
    Permutation::new(images)
}

/// `(α_k, θ_k)` with `α_k : 1 → 3 → 2 → 5 → 6 → ⋯ → k → 4 → 1` and
/// `θ_k : 1 → k → k-1 → ⋯ → 5 → 2 → 3 → 4 → 1`.
pub fn family_thm12(k: usize) -> Result<(Permutation, Permutation)> {
    if k < 5 {
        return Err(Error::DegreeTooSmall { min: 5, got: k });
    }
    let alpha: Vec<usize> = [1, 3, 2].into_iter().chain(5..=k).chain([4]).collect();
    let theta: Vec<usize> = [1].into_iter().chain((5..=k).rev()).chain([2, 3, 4]).collect();
    Ok((Permutation::from_cycle(&alpha, k)?, Permutation::from_cycle(&theta, k)?))
}

/// `(β_k, δ_k)` with `β_k : 1 → 3 → 2 → 4 → 5 → ⋯ → k → 1` and
/// `δ_k : 1 → k → k-1 → ⋯ → 5 → 3 → 2 → 4 → 1`.
pub fn family_thm13(k: usize) -> Result<(Permutation, Permutation)> {
    if k < 5 {
        return Err(Error::DegreeTooSmall { min: 5, got: k });
    }
    let beta: Vec<usize> = [1, 3, 2].into_iter().chain(4..=k).collect();
    let delta: Vec<usize> = [1].into_iter().chain((5..=k).rev()).chain([3, 2, 4]).collect();
    Ok((Permutation::from_cycle(&beta, k)?, Permutation::from_cycle(&delta, k)?))
}

/// The four extensions `(σ_k, ρ_k, μ_k, ν_k)` of a seed `π_j` with
/// `π(j-1) < π(j) < j`, for `k >= j + 2`.
pub fn family_cor11(pi: &Permutation, k: usize) -> Result<(Permutation, Permutation, Permutation, Permutation)> {
    let j = pi.degree();
    if j < 3 {
        return Err(Error::DegreeTooSmall { min: 3, got: j });
    }
    if !(pi.image(j - 1) < pi.image(j) && pi.image(j) < j) {
        return Err(precondition("seed needs π(j-1) < π(j) < j"));
    }
    if k < j + 2 {
        return Err(precondition(format!("k must be at least j + 2 = {}", j + 2)));
    }
    let sigma = (1..=k)
        .map(|x| match x {
            _ if x < j => pi.image(x),
            _ if x < k => x + 1,
            _ => pi.image(j),
        })
        .collect();
    let rho = (1..=k)
        .map(|x| match x {
            _ if x <= j && pi.image(x) != j => pi.image(x),
            _ if x <= j => j + 1,
            _ if x < k => x + 1,
            _ => j,
        })
        .collect();
    let mu = (1..=k)
        .map(|x| match x {
            _ if x <= j && pi.image(x) != j => pi.image(x),
            _ if x <= j => k,
            _ => x - 1,
        })
        .collect();
    let nu = (1..=k)
        .map(|x| match x {
            _ if x < j => pi.image(x),
            _ if x == j => k,
            _ if x == j + 1 => pi.image(j),
            _ => x - 1,
        })
        .collect();
    Ok((Permutation::new(sigma)?, Permutation::new(rho)?, Permutation::new(mu)?, Permutation::new(nu)?))
}

/// Glues `σ_ℓ, ρ_ℓ` on `P_ℓ` to `ξ, η` on `{ℓ-1, …, k}`, returning
/// `((σξ)_k, (ση)_k, (ρη)_k)`.
pub fn family_thm4_combine(
    sigma: &Permutation,
    rho: &Permutation,
    xi: &RangePermutation,
    eta: &RangePermutation,
    k: usize,
) -> Result<(Permutation, Permutation, Permutation)> {
    let l = sigma.degree();
    if l < 4 {
        return Err(Error::DegreeTooSmall { min: 4, got: l });
    }
    if rho.degree() != l {
        return Err(Error::DegreeMismatch { left: l, right: rho.degree() });
    }
    if k < l + 1 {
        return Err(precondition("k must exceed ℓ"));
    }
    for (name, r) in [("ξ", xi), ("η", eta)] {
        if r.start() != l - 1 || r.end() != k {
            return Err(precondition(format!("{name} must act on {{{}..{k}}}", l - 1)));
        }
    }
    if sigma.image(l) != l - 1 || sigma.image(l - 1) >= l - 1 {
        return Err(precondition("need σ(ℓ) = ℓ-1 and σ(ℓ-1) < ℓ-1"));
    }
    if xi.image(l) != l - 1 {
        return Err(precondition("need ξ(ℓ) = ℓ-1"));
    }
    if eta.image(l - 1) != l || eta.image(l) <= l {
        return Err(precondition("need η(ℓ-1) = ℓ and η(ℓ) > ℓ"));
    }
    let sx = (1..=k)
        .map(|x| match x {
            _ if x < l && sigma.image(x) != l => sigma.image(x),
            _ if x < l => xi.image(l - 1),
            _ => xi.image(x),
        })
        .collect();
    let se = (1..=k).map(|x| if x < l { sigma.image(x) } else { eta.image(x) }).collect();
    let re = (1..=k)
        .map(|x| match x {
            _ if x < l => rho.image(x),
            _ if eta.image(x) != l - 1 => eta.image(x),
            _ => rho.image(l),
        })
        .collect();
    Ok((Permutation::new(sx)?, Permutation::new(se)?, Permutation::new(re)?))
}
