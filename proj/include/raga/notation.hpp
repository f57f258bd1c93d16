#pragma once

// Swara notation codec, the embedded Bageshree corpus and raga conformance.
//
// Pitches are integer semitone offsets from the middle-octave tonic Sa,
// covering three octaves: -12 (lower S) .. 23 (upper N).

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace raga {

inline constexpr int kMinPitch = -12;
inline constexpr int kMaxPitch = 23;

/// Semitone offset from middle Sa. Construction checks the [-12, 23] range.
class PitchValue {
public:
  explicit PitchValue(int value);

  int value() const noexcept { return value_; }
  /// Pitch class in 0..11 (mathematical modulus, so -7 maps to 5).
  int pitch_class() const noexcept { return ((value_ % 12) + 12) % 12; }

  friend bool operator==(PitchValue, PitchValue) = default;
  friend auto operator<=>(PitchValue, PitchValue) = default;

private:
  int value_;
};

/// Twelve swara letters in ascending chromatic order from Sa.
enum class Letter : std::uint8_t { S, r, R, g, G, M, m, P, d, D, n, N };
enum class Octave : std::int8_t { lower = -1, middle = 0, upper = 1 };

inline constexpr std::array<Letter, 12> kAllLetters = {
    Letter::S, Letter::r, Letter::R, Letter::g, Letter::G, Letter::M,
    Letter::m, Letter::P, Letter::d, Letter::D, Letter::n, Letter::N};
inline constexpr std::array<Octave, 3> kAllOctaves = {Octave::lower, Octave::middle,
                                                      Octave::upper};

struct Swara {
  Letter letter;
  Octave octave;

  friend bool operator==(const Swara&, const Swara&) = default;
};

char letter_char(Letter letter) noexcept;

PitchValue encode_swara(Swara s) noexcept;
/// Throws RangeError outside [-12, 23].
Swara decode_pitch(int value);
inline Swara decode_pitch(PitchValue v) { return decode_pitch(v.value()); }

/// Token form: letter, then ' for lower octave or '' (or ") for upper.
std::string render_swara(Swara s);

/// Ordered pitches; serial numbers (the "time" axis) are 1-based.
class NoteSequence {
public:
  NoteSequence() = default;
  explicit NoteSequence(std::vector<PitchValue> notes) : notes_(std::move(notes)) {}
  static NoteSequence from_ints(std::span<const int> values);

  std::size_t size() const noexcept { return notes_.size(); }
  bool empty() const noexcept { return notes_.empty(); }
  /// 1-based access, matching the corpus serial numbers.
  PitchValue at(std::size_t serial) const;
  const std::vector<PitchValue>& notes() const noexcept { return notes_; }
  std::vector<int> values() const;
  std::vector<double> as_reals() const;

  friend bool operator==(const NoteSequence&, const NoteSequence&) = default;

private:
  std::vector<PitchValue> notes_;
};

/// Parses whitespace-separated swara or integer tokens. '#' starts a
/// comment that runs to end of line.
NoteSequence parse_sequence(std::istream& in);
NoteSequence parse_sequence(std::string_view text);

/// Inverse of parse_sequence: swara tokens separated by single spaces.
std::string render_sequence(const NoteSequence& seq);

/// Two-column `sr,pitch` CSV, header optional.
NoteSequence parse_corpus_csv(std::istream& in);

/// Loads a corpus file. Files whose first data line contains a comma are
/// read as CSV, everything else as token text.
NoteSequence load_corpus_file(const std::filesystem::path& path);

/// The 240-note Bageshree sequence, serial numbers 1..240.
NoteSequence load_corpus();

struct RagaProfile {
  std::string name;
  std::set<int> permitted_pitch_classes;
  std::set<int> vivadi_pitch_classes;

  /// Throws InputError when the sets overlap or leave 0..11.
  void check() const;
};

/// S R g M P D n permitted; r G m d N are vivadi.
const RagaProfile& bageshree_profile();

struct ConformanceReport {
  std::size_t total_notes = 0;
  std::size_t vivadi_count = 0;
  /// 1-based serial numbers of the offending notes.
  std::vector<std::size_t> vivadi_positions;
};

ConformanceReport validate_against_raga(const NoteSequence& seq, const RagaProfile& profile);

}  // namespace raga
