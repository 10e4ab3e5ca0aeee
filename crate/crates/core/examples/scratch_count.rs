use simple_spectrum_core::analytics::{classify_generic_primes, partition_by_max_prime, stratify_kn};
use simple_spectrum_core::{enumerate_simple_groups, sieve_primes, EnumerateOptions};
use std::time::Instant;

fn main() {
    for limit in [1000u64, 10000] {
        let pi = sieve_primes(limit).unwrap();
        let start = Instant::now();
        let records = enumerate_simple_groups(&pi, &EnumerateOptions::default());
        println!("limit {limit}: {} groups in {:?}", records.len(), start.elapsed());
        if limit == 10000 {
            let partition = partition_by_max_prime(&records);
            let generic = classify_generic_primes(&partition, (1000, 10000));
            let nongeneric: usize = partition
                .values()
                .filter(|c| 1000 < c.p && c.p < 10000)
                .map(|c| c.nongeneric_members.len())
                .sum();
            println!("generic {} nongeneric {}", generic.len(), nongeneric);
            let expected = [8usize, 65, 349, 715, 595, 628, 828, 641, 398, 309, 238, 119, 87, 62, 32, 12, 18, 7, 16, 15, 8, 12];
            let kn: Vec<usize> = stratify_kn(&records)
                .iter()
                .filter(|s| s.n >= 3 && s.n <= 24)
                .map(|s| s.count)
                .collect();
            println!("K_n match: {}", kn == expected);
            println!("|S_257 ng| = {}", partition[&257].nongeneric_members.len());
            println!("|S_6481 ng| = {}", partition[&6481].nongeneric_members.len());
        }
    }
}
