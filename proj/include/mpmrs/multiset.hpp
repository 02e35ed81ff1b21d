#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpmrs {

/// Interned symbol. Equal names denote the same symbol; symbols order
/// lexicographically by name.
class Symbol {
public:
	explicit Symbol(std::string_view name);

	const std::string& name() const noexcept { return *name_; }

	friend bool operator==(Symbol a, Symbol b) noexcept { return a.name_ == b.name_; }
	friend std::strong_ordering operator<=>(Symbol a, Symbol b) noexcept
	{
		if (a.name_ == b.name_)
			return std::strong_ordering::equal;
		return *a.name_ <=> *b.name_;
	}

private:
	const std::string* name_;
};

bool is_valid_symbol_name(std::string_view name) noexcept;

using SymbolSet = std::set<Symbol>;

SymbolSet make_symbol_set(std::initializer_list<std::string_view> names);

/// Finite multiset over symbols. Entries are kept sorted by symbol name with
/// strictly positive counts, so structural equality is multiset equality.
class Multiset {
public:
	using Count = std::uint64_t;
	using Entry = std::pair<Symbol, Count>;

	Multiset() = default;
	Multiset(std::initializer_list<std::pair<std::string_view, Count>> entries);

	/// Parses the text form: whitespace separated symbols with an optional
	/// "^k" suffix; "λ" or blank denotes the empty multiset. Repeated
	/// symbols accumulate, so "L Q L Q" equals "L^2 Q^2".
	static Multiset parse(std::string_view text);

	static Multiset of(Symbol s, Count n = 1);

	Count count(Symbol s) const noexcept;
	Count size() const noexcept;
	bool empty() const noexcept { return entries_.empty(); }
	std::size_t distinct() const noexcept { return entries_.size(); }
	std::span<const Entry> entries() const noexcept { return entries_; }
	SymbolSet support() const;

	/// Canonical rendering, "λ" when empty.
	std::string str() const;

	void add(Symbol s, Count n = 1);
	Multiset& operator+=(const Multiset& other);
	Multiset scaled(Count k) const;

	friend Multiset operator+(Multiset a, const Multiset& b) { return a += b; }
	friend bool operator==(const Multiset&, const Multiset&) = default;
	friend std::strong_ordering operator<=>(const Multiset& a, const Multiset& b);

private:
	std::vector<Entry> entries_;
};

Multiset sum(const Multiset& x, const Multiset& y);

/// x - y; throws Error(Precondition) naming the first symbol where y exceeds x.
Multiset difference(const Multiset& x, const Multiset& y);

bool is_submultiset(const Multiset& x, const Multiset& y) noexcept;

/// Restriction of m to the symbols in keep.
Multiset project(const Multiset& m, const SymbolSet& keep);

/// Restriction of m to the symbols outside drop.
Multiset project_out(const Multiset& m, const SymbolSet& drop);

/// Largest k with lhs^k ⊆ cfg; lhs must be non-empty.
Multiset::Count max_multiplicity(const Multiset& lhs, const Multiset& cfg) noexcept;

Multiset::Count checked_add(Multiset::Count a, Multiset::Count b);
Multiset::Count checked_mul(Multiset::Count a, Multiset::Count b);

} // namespace mpmrs
