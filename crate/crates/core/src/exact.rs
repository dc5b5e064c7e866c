//! Checked i64 arithmetic. Overflow aborts instead of wrapping: every value
//! produced by this crate is an exact integer or a loud panic.

#[inline]
pub fn add(a: i64, b: i64) -> i64 {
	a.checked_add(b)
		.unwrap_or_else(|| panic!("integer overflow: {a} + {b}"))
}

#[inline]
pub fn sub(a: i64, b: i64) -> i64 {
	a.checked_sub(b)
		.unwrap_or_else(|| panic!("integer overflow: {a} - {b}"))
}

#[inline]
pub fn mul(a: i64, b: i64) -> i64 {
	a.checked_mul(b)
		.unwrap_or_else(|| panic!("integer overflow: {a} * {b}"))
}

#[inline]
pub fn neg(a: i64) -> i64 {
	a.checked_neg()
		.unwrap_or_else(|| panic!("integer overflow: -({a})"))
}

pub fn sum<I: IntoIterator<Item = i64>>(items: I) -> i64 {
	items.into_iter().fold(0i64, add)
}
