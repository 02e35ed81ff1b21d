#include "mpmrs/multiset.hpp"

#include "mpmrs/error.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <unordered_set>

namespace mpmrs {

namespace {

// Node-based set: element addresses stay valid for the process lifetime.
class Interner {
public:
	const std::string* intern(std::string_view name)
	{
		std::lock_guard lock(mutex_);
		auto [it, inserted] = names_.emplace(name);
		return &*it;
	}

private:
	std::mutex mutex_;
	std::unordered_set<std::string> names_;
};

Interner& interner()
{
	static Interner instance;
	return instance;
}

constexpr std::string_view empty_token = "λ";

bool is_space(char c) noexcept
{
	return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

} // namespace

bool is_valid_symbol_name(std::string_view name) noexcept
{
	if (name.empty() || name == empty_token)
		return false;
	if (name.find("->") != std::string_view::npos)
		return false;
	return std::none_of(name.begin(), name.end(),
	                    [](char c) { return is_space(c) || c == '^' || c == '@'; });
}

Symbol::Symbol(std::string_view name)
{
	if (!is_valid_symbol_name(name))
		throw Error(Error::Kind::Parse, "invalid symbol name '" + std::string(name) + "'");
	name_ = interner().intern(name);
}

SymbolSet make_symbol_set(std::initializer_list<std::string_view> names)
{
	SymbolSet out;
	for (auto n : names)
		out.insert(Symbol(n));
	return out;
}

Multiset::Count checked_add(Multiset::Count a, Multiset::Count b)
{
	if (a > std::numeric_limits<Multiset::Count>::max() - b)
		throw Error(Error::Kind::Overflow, "multiset count overflow");
	return a + b;
}

Multiset::Count checked_mul(Multiset::Count a, Multiset::Count b)
{
	if (a != 0 && b > std::numeric_limits<Multiset::Count>::max() / a)
		throw Error(Error::Kind::Overflow, "multiset count overflow");
	return a * b;
}

Multiset::Multiset(std::initializer_list<std::pair<std::string_view, Count>> entries)
{
	for (const auto& [name, n] : entries)
		add(Symbol(name), n);
}

Multiset Multiset::of(Symbol s, Count n)
{
	Multiset m;
	m.add(s, n);
	return m;
}

Multiset Multiset::parse(std::string_view text)
{
	Multiset m;
	std::size_t i = 0;
	while (i < text.size()) {
		while (i < text.size() && is_space(text[i]))
			++i;
		std::size_t start = i;
		while (i < text.size() && !is_space(text[i]))
			++i;
		if (start == i)
			break;
		std::string_view token = text.substr(start, i - start);
		if (token == empty_token)
			continue;
		Count n = 1;
		if (auto caret = token.find('^'); caret != std::string_view::npos) {
			std::string_view digits = token.substr(caret + 1);
			if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
			                                   [](char c) { return c >= '0' && c <= '9'; }))
				throw Error(Error::Kind::Parse, "bad count in token '" + std::string(token) + "'");
			n = 0;
			for (char c : digits)
				n = checked_add(checked_mul(n, 10), static_cast<Count>(c - '0'));
			if (n == 0)
				throw Error(Error::Kind::Parse, "zero count in token '" + std::string(token) + "'");
			token = token.substr(0, caret);
		}
		m.add(Symbol(token), n);
	}
	return m;
}

Multiset::Count Multiset::count(Symbol s) const noexcept
{
	auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
	                           [](const Entry& e, Symbol key) { return e.first < key; });
	return (it != entries_.end() && it->first == s) ? it->second : 0;
}

Multiset::Count Multiset::size() const noexcept
{
	Count total = 0;
	for (const auto& e : entries_)
		total += e.second;
	return total;
}

SymbolSet Multiset::support() const
{
	SymbolSet out;
	for (const auto& e : entries_)
		out.insert(e.first);
	return out;
}

std::string Multiset::str() const
{
	if (entries_.empty())
		return std::string(empty_token);
	std::string out;
	for (const auto& [s, n] : entries_) {
		if (!out.empty())
			out += ' ';
		out += s.name();
		if (n > 1) {
			out += '^';
			out += std::to_string(n);
		}
	}
	return out;
}

void Multiset::add(Symbol s, Count n)
{
	if (n == 0)
		return;
	auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
	                           [](const Entry& e, Symbol key) { return e.first < key; });
	if (it != entries_.end() && it->first == s)
		it->second = checked_add(it->second, n);
	else
		entries_.insert(it, {s, n});
}

Multiset& Multiset::operator+=(const Multiset& other)
{
	if (other.entries_.empty())
		return *this;
	std::vector<Entry> merged;
	merged.reserve(entries_.size() + other.entries_.size());
	auto a = entries_.begin();
	auto b = other.entries_.begin();
	while (a != entries_.end() && b != other.entries_.end()) {
		if (a->first == b->first) {
			merged.emplace_back(a->first, checked_add(a->second, b->second));
			++a;
			++b;
		} else if (a->first < b->first) {
			merged.push_back(*a++);
		} else {
			merged.push_back(*b++);
		}
	}
	merged.insert(merged.end(), a, entries_.end());
	merged.insert(merged.end(), b, other.entries_.end());
	entries_ = std::move(merged);
	return *this;
}

Multiset Multiset::scaled(Count k) const
{
	if (k == 0)
		return {};
	Multiset out = *this;
	for (auto& e : out.entries_)
		e.second = checked_mul(e.second, k);
	return out;
}

std::strong_ordering operator<=>(const Multiset& a, const Multiset& b)
{
	return std::lexicographical_compare_three_way(
		a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
		[](const Multiset::Entry& x, const Multiset::Entry& y) {
			if (auto c = x.first <=> y.first; c != 0)
				return c;
			return x.second <=> y.second;
		});
}

Multiset sum(const Multiset& x, const Multiset& y)
{
	return x + y;
}

Multiset difference(const Multiset& x, const Multiset& y)
{
	Multiset out;
	auto xe = x.entries();
	std::size_t i = 0;
	for (const auto& [s, n] : y.entries()) {
		while (i < xe.size() && xe[i].first < s) {
			out.add(xe[i].first, xe[i].second);
			++i;
		}
		if (i == xe.size() || !(xe[i].first == s) || xe[i].second < n)
			throw Error(Error::Kind::Precondition,
			            "difference: subtrahend exceeds minuend at symbol '" + s.name() + "'");
		out.add(s, xe[i].second - n);
		++i;
	}
	for (; i < xe.size(); ++i)
		out.add(xe[i].first, xe[i].second);
	return out;
}

bool is_submultiset(const Multiset& x, const Multiset& y) noexcept
{
	auto ye = y.entries();
	std::size_t j = 0;
	for (const auto& [s, n] : x.entries()) {
		while (j < ye.size() && ye[j].first < s)
			++j;
		if (j == ye.size() || !(ye[j].first == s) || ye[j].second < n)
			return false;
		++j;
	}
	return true;
}

Multiset project(const Multiset& m, const SymbolSet& keep)
{
	Multiset out;
	for (const auto& [s, n] : m.entries())
		if (keep.contains(s))
			out.add(s, n);
	return out;
}

Multiset project_out(const Multiset& m, const SymbolSet& drop)
{
	Multiset out;
	for (const auto& [s, n] : m.entries())
		if (!drop.contains(s))
			out.add(s, n);
	return out;
}

Multiset::Count max_multiplicity(const Multiset& lhs, const Multiset& cfg) noexcept
{
	Multiset::Count best = std::numeric_limits<Multiset::Count>::max();
	for (const auto& [s, n] : lhs.entries())
		best = std::min(best, cfg.count(s) / n);
	return lhs.empty() ? 0 : best;
}

} // namespace mpmrs
