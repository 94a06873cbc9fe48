use crate::words::{Letter, Word};

/// Normal form in ⟨x, y | x^p = y^q⟩: z^m times alternating syllables x^a (0<a<|p|)
/// and y^b (0<b<|q|), with z = x^p = y^q central. Written back as the word
/// x^(p·m) followed by the syllables.
pub(crate) fn torus_normal_form(w: &Word, p: i64, q: i64) -> Word {
    let orders = [p.abs(), q.abs()];
    let signs = [p.signum(), q.signum()];
    let mut m: i64 = 0;
    let mut syl: Vec<(usize, i64)> = Vec::new();
    for &l in w.letters() {
        let g = l.gen();
        // in the internal generator g' = g^sign, the letter is g'^(e)
        let e = l.sign() * signs[g];
        let n = orders[g];
        let (cur, pop) = match syl.last() {
            Some(&(h, a)) if h == g => (a, true),
            _ => (0, false),
        };
        if pop {
            syl.pop();
        }
        let total = cur + e;
        m += total.div_euclid(n);
        let r = total.rem_euclid(n);
        if r != 0 {
            syl.push((g, r));
        }
    }
    let mut letters: Vec<Letter> = Vec::new();
    let mut push_power = |g: usize, e: i64| {
        let l = Letter::new(g, e < 0);
        for _ in 0..e.abs() {
            letters.push(l);
        }
    };
    // z^m = x^(p m); merged with a leading x syllable
    let mut rest: &[(usize, i64)] = &syl;
    let mut lead = orders[0] * m;
    if let Some(&(0, a)) = syl.first() {
        lead += a;
        rest = &syl[1..];
    }
    push_power(0, lead * signs[0]);
    for &(g, a) in rest {
        push_power(g, a * signs[g]);
    }
    crate::words::free_reduce(&letters)
}
