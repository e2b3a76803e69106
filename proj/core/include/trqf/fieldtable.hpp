#pragma once

#include "trqf/numberfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trqf {

// One JSON object per line:
//   label, degree, poly (ascending integers), basis (rows of "p/q" strings),
//   disc, h, h_plus, optional units (integer coordinate arrays, or objects
//   {"coords": [...], "denom": n}), optional sqrt2 (integer coordinates),
//   optional tags (string map).
FieldRecord parse_field_record(const std::string& json_line);
std::string serialize_field_record(const FieldRecord& rec);

class FieldTable {
public:
    FieldTable() = default;
    explicit FieldTable(std::vector<FieldRecord> records);

    const std::vector<FieldRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    const FieldRecord* find_label(const std::string& label) const;
    std::vector<const FieldRecord*> find_disc(const Integer& disc) const;

private:
    std::vector<FieldRecord> records_;
};

// Reads a table file; malformed lines raise ParseError with the line number,
// duplicate labels or non-positive discriminants raise ValidationError.
FieldTable ingest_fields(const std::string& path);

// Reads a file holding a single record (the first non-empty line).
FieldRecord read_field_file(const std::string& path);
FieldContext load_field_file(const std::string& path);

}  // namespace trqf
