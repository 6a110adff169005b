#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace hybridnet {

enum class Band : std::uint8_t { V = 0, E = 1 };

inline constexpr std::array<Band, 2> kAllBands{Band::V, Band::E};

constexpr std::size_t index_of(Band band) { return static_cast<std::size_t>(band); }

constexpr std::string_view to_string(Band band) { return band == Band::V ? "V" : "E"; }

// A subset of {V, E}.
class BandSet {
 public:
  constexpr BandSet() = default;
  constexpr BandSet(std::initializer_list<Band> bands) {
    for (Band b : bands) insert(b);
  }

  static constexpr BandSet none() { return {}; }
  static constexpr BandSet only(Band b) { return {b}; }
  static constexpr BandSet both() { return {Band::V, Band::E}; }

  constexpr void insert(Band b) { bits_ |= mask(b); }
  constexpr void erase(Band b) { bits_ &= static_cast<std::uint8_t>(~mask(b)); }
  constexpr bool contains(Band b) const { return (bits_ & mask(b)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return (bits_ & 1u) + ((bits_ >> 1) & 1u); }

  constexpr BandSet intersect(BandSet other) const { return from_bits(bits_ & other.bits_); }
  constexpr BandSet unite(BandSet other) const { return from_bits(bits_ | other.bits_); }

  constexpr bool operator==(const BandSet&) const = default;

  std::string str() const {
    if (empty()) return "{}";
    if (size() == 2) return "{V,E}";
    return contains(Band::V) ? "{V}" : "{E}";
  }

 private:
  static constexpr std::uint8_t mask(Band b) {
    return static_cast<std::uint8_t>(1u << index_of(b));
  }
  static constexpr BandSet from_bits(unsigned bits) {
    BandSet s;
    s.bits_ = static_cast<std::uint8_t>(bits & 3u);
    return s;
  }

  std::uint8_t bits_ = 0;
};

// Fixed-size per-band storage indexed by Band.
template <typename T>
struct PerBand {
  std::array<T, 2> values{};

  constexpr T& operator[](Band b) { return values[index_of(b)]; }
  constexpr const T& operator[](Band b) const { return values[index_of(b)]; }
};

}  // namespace hybridnet
