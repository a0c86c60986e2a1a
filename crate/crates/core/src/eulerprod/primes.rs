/// Primes `p <= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::is_prime_u64;

    #[test]
    fn agrees_with_trial_division() {
        let ps = primes_up_to(10_000);
        assert_eq!(ps.len(), 1229);
        let direct: Vec<u64> = (0..=10_000).filter(|&k| is_prime_u64(k)).collect();
        assert_eq!(ps, direct);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }
}
