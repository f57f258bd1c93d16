#include "raga/notation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "raga/error.hpp"

namespace raga {

namespace {

constexpr std::array<int, 240> kBageshree = {
    0,  -2, -3, -2, 0,  5,  5,  3,  5,  9,  10, 9,  5,  10, 9,  5,  9,  10, 12, 12,
    10, 9,  5,  7,  9,  5,  3,  5,  3,  2,  0,  -3, -2, 0,  5,  0,  -2, -3, -7, -3,
    -2, -3, -7, -2, -3, -7, -3, -2, 0,  5,  3,  2,  0,  2,  0,  -2, -3, -7, -3, 0,
    0,  -2, -3, 0,  -2, 0,  5,  3,  5,  9,  10, 9,  5,  10, 9,  5,  7,  9,  3,  5,
    3,  2,  0,  0,  2,  0,  -2, -3, -7, -3, -2, -3, 0,  5,  3,  5,  9,  5,  9,  9,
    10, 9,  5,  7,  9,  3,  5,  3,  2,  0,  0,  -2, 0,  5,  3,  5,  10, 9,  10, 12,
    14, 10, 12, 10, 9,  5,  9,  10, 9,  3,  3,  5,  5,  9,  9,  10, 9,  12, 9,  10,
    12, 9,  10, 9,  12, 10, 9,  5,  9,  10, 12, 10, 9,  5,  7,  9,  5,  3,  2,  0,
    5,  3,  5,  9,  10, 12, 14, 12, 17, 15, 14, 12, 17, 15, 14, 12, 10, 12, 14, 10,
    12, 10, 9,  14, 10, 9,  5,  9,  5,  10, 10, 9,  5,  9,  12, 12, 17, 15, 17, 15,
    14, 12, 12, 14, 10, 12, 10, 9,  12, 10, 9,  5,  9,  10, 9,  12, 9,  10, 12, 9,
    10, 9,  12, 10, 12, 14, 10, 12, 10, 9,  5,  7,  9,  5,  3,  2,  0,  -2, -3, 0};

constexpr std::string_view kLetterChars = "SrRgGMmPdDnN";

int floor_div12(int v) { return (v >= 0) ? v / 12 : -((-v + 11) / 12); }

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool parse_int(std::string_view text, int& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && first != last;
}

PitchValue token_to_pitch(const std::string& token, std::size_t position) {
  int number = 0;
  if (parse_int(token, number)) {
    if (number < kMinPitch || number > kMaxPitch) {
      throw RangeError("pitch " + token + " at position " + std::to_string(position) +
                       " outside [-12, 23]");
    }
    return PitchValue(number);
  }
  auto idx = kLetterChars.find(token.front());
  if (idx == std::string_view::npos) {
    throw ParseError(token, position, "unknown swara letter");
  }
  std::string_view mark = std::string_view(token).substr(1);
  Octave octave;
  if (mark.empty()) {
    octave = Octave::middle;
  } else if (mark == "'") {
    octave = Octave::lower;
  } else if (mark == "''" || mark == "\"") {
    octave = Octave::upper;
  } else {
    throw ParseError(token, position, "unknown octave mark");
  }
  return encode_swara({kAllLetters[idx], octave});
}

}  // namespace

PitchValue::PitchValue(int value) : value_(value) {
  if (value < kMinPitch || value > kMaxPitch) {
    throw RangeError("pitch value " + std::to_string(value) + " outside [-12, 23]");
  }
}

char letter_char(Letter letter) noexcept { return kLetterChars[static_cast<int>(letter)]; }

PitchValue encode_swara(Swara s) noexcept {
  return PitchValue(static_cast<int>(s.letter) + 12 * static_cast<int>(s.octave));
}

Swara decode_pitch(int value) {
  if (value < kMinPitch || value > kMaxPitch) {
    throw RangeError("pitch value " + std::to_string(value) + " outside [-12, 23]");
  }
  int octave = floor_div12(value);
  int pc = value - 12 * octave;
  return {kAllLetters[pc], static_cast<Octave>(octave)};
}

std::string render_swara(Swara s) {
  std::string out(1, letter_char(s.letter));
  if (s.octave == Octave::lower) out += "'";
  if (s.octave == Octave::upper) out += "''";
  return out;
}

NoteSequence NoteSequence::from_ints(std::span<const int> values) {
  std::vector<PitchValue> notes;
  notes.reserve(values.size());
  for (int v : values) notes.emplace_back(v);
  return NoteSequence(std::move(notes));
}

PitchValue NoteSequence::at(std::size_t serial) const {
  if (serial == 0 || serial > notes_.size()) {
    throw RangeError("serial number " + std::to_string(serial) + " outside 1.." +
                     std::to_string(notes_.size()));
  }
  return notes_[serial - 1];
}

std::vector<int> NoteSequence::values() const {
  std::vector<int> out;
  out.reserve(notes_.size());
  for (auto n : notes_) out.push_back(n.value());
  return out;
}

std::vector<double> NoteSequence::as_reals() const {
  std::vector<double> out;
  out.reserve(notes_.size());
  for (auto n : notes_) out.push_back(static_cast<double>(n.value()));
  return out;
}

NoteSequence parse_sequence(std::istream& in) {
  std::vector<PitchValue> notes;
  std::string line;
  std::size_t position = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(strip_comment(line));
    std::string token;
    while (fields >> token) {
      ++position;
      notes.push_back(token_to_pitch(token, position));
    }
  }
  return NoteSequence(std::move(notes));
}

NoteSequence parse_sequence(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_sequence(in);
}

std::string render_sequence(const NoteSequence& seq) {
  std::string out;
  for (auto note : seq.notes()) {
    if (!out.empty()) out += ' ';
    out += render_swara(decode_pitch(note));
  }
  return out;
}

NoteSequence parse_corpus_csv(std::istream& in) {
  std::vector<PitchValue> notes;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(line, line_no, "expected two columns sr,pitch");
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string sr = trim(line.substr(0, comma));
    std::string pitch = trim(line.substr(comma + 1));
    int sr_value = 0;
    int pitch_value = 0;
    bool numeric = parse_int(sr, sr_value) && parse_int(pitch, pitch_value);
    if (!numeric) {
      if (first_data_line) {
        first_data_line = false;
        continue;  // header
      }
      throw ParseError(pitch, line_no, "pitch column must be a decimal integer");
    }
    first_data_line = false;
    if (pitch_value < kMinPitch || pitch_value > kMaxPitch) {
      throw RangeError("pitch " + pitch + " on line " + std::to_string(line_no) +
                       " outside [-12, 23]");
    }
    notes.emplace_back(pitch_value);
  }
  return NoteSequence(std::move(notes));
}

NoteSequence load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  bool csv = false;
  std::istringstream scan(text);
  std::string line;
  while (std::getline(scan, line)) {
    line = strip_comment(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    csv = line.find(',') != std::string::npos;
    break;
  }
  std::istringstream in_text(text);
  return csv ? parse_corpus_csv(in_text) : parse_sequence(in_text);
}

NoteSequence load_corpus() { return NoteSequence::from_ints(kBageshree); }

void RagaProfile::check() const {
  for (int pc : permitted_pitch_classes) {
    if (pc < 0 || pc > 11) throw InputError("pitch class outside 0..11 in " + name);
    if (vivadi_pitch_classes.contains(pc)) {
      throw InputError("pitch class " + std::to_string(pc) + " both permitted and vivadi");
    }
  }
  for (int pc : vivadi_pitch_classes) {
    if (pc < 0 || pc > 11) throw InputError("pitch class outside 0..11 in " + name);
  }
}

const RagaProfile& bageshree_profile() {
  static const RagaProfile profile{
      "Bageshree", {0, 2, 3, 5, 7, 9, 10}, {1, 4, 6, 8, 11}};
  return profile;
}

ConformanceReport validate_against_raga(const NoteSequence& seq, const RagaProfile& profile) {
  ConformanceReport report;
  report.total_notes = seq.size();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (profile.vivadi_pitch_classes.contains(seq.notes()[i].pitch_class())) {
      ++report.vivadi_count;
      report.vivadi_positions.push_back(i + 1);
    }
  }
  return report;
}

}  // namespace raga
