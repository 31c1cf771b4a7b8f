#include "dqm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace dqm {

void validate(const MeasureConfig& cfg) {
    if (cfg.B < 1) throw std::invalid_argument("MeasureConfig: B must be >= 1");
    if (!(cfg.R > 0.0 && cfg.R <= 1.0))
        throw std::invalid_argument("MeasureConfig: R must be in (0, 1]");
    if (cfg.nv < 1) throw std::invalid_argument("MeasureConfig: nv must be >= 1");
}

void validate(const LabeledDataset& ds) {
    if (ds.labels.size() != ds.m)
        throw InputError("dataset: labels length does not match row count");
    if (ds.data.size() != ds.m * ds.n)
        throw InputError("dataset: data size does not match m * n");
    if (ds.c < 2) throw InputError("dataset: c < 2 (need at least two classes)");
    std::vector<std::size_t> seen(static_cast<std::size_t>(ds.c), 0);
    for (std::size_t i = 0; i < ds.m; ++i) {
        const int y = ds.labels[i];
        if (y < 0 || y >= ds.c)
            throw InputError("dataset: label out of range at row " + std::to_string(i));
        ++seen[static_cast<std::size_t>(y)];
    }
    for (int i = 0; i < ds.c; ++i)
        if (seen[static_cast<std::size_t>(i)] == 0)
            throw InputError("dataset: class " + std::to_string(i) + " has no rows");
    for (std::size_t i = 0; i < ds.data.size(); ++i)
        if (!std::isfinite(ds.data[i]))
            throw InputError("dataset: non-finite value at row " + std::to_string(i / ds.n) +
                             ", column " + std::to_string(i % ds.n));
}

namespace {

// RFC-4180 field splitting: quoted fields, "" escapes, CR/LF tolerant.
std::vector<std::string> split_csv_record(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    if (in_quotes)
        throw InputError("csv: unterminated quoted field on line " + std::to_string(line_no));
    fields.push_back(std::move(field));
    return fields;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t')) --last;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw InputError("csv: cannot parse numeric cell at data row " + std::to_string(row + 1) +
                         ", column " + std::to_string(col + 1) + ": \"" + cell + "\"");
    if (!std::isfinite(value))
        throw InputError("csv: non-finite value at data row " + std::to_string(row + 1) +
                         ", column " + std::to_string(col + 1));
    return value;
}

struct LabelRemap {
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names;

    int id_for(const std::string& name) {
        auto [it, inserted] = ids.try_emplace(name, static_cast<int>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    }
};

std::uint32_t read_be_u32(std::istream& in, const std::string& path) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4))
        throw InputError("idx: truncated file: " + path);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw InputError("csv: empty file: " + path);
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);  // UTF-8 BOM
    const std::vector<std::string> header = split_csv_record(line, 1);

    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == label_column) { label_idx = i; break; }
    if (label_idx == header.size()) {
        std::size_t parsed = 0;
        const auto [ptr, ec] = std::from_chars(
            label_column.data(), label_column.data() + label_column.size(), parsed);
        if (ec == std::errc() && ptr == label_column.data() + label_column.size() &&
            parsed < header.size()) {
            label_idx = parsed;
        } else {
            throw InputError("csv: label column \"" + label_column + "\" not found in " + path);
        }
    }

    LabeledDataset ds;
    ds.n = header.size() - 1;
    LabelRemap remap;
    std::size_t line_no = 1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_csv_record(line, line_no);
        if (fields.size() != header.size())
            throw InputError("csv: line " + std::to_string(line_no) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(header.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i == label_idx) continue;
            const std::size_t col = i < label_idx ? i : i - 1;
            ds.data.push_back(parse_cell(fields[i], row, col));
        }
        ds.labels.push_back(remap.id_for(fields[label_idx]));
        ++row;
    }
    ds.m = row;
    ds.c = static_cast<int>(remap.names.size());
    ds.label_names = std::move(remap.names);
    if (ds.m == 0) throw InputError("csv: no data rows in " + path);
    if (ds.c < 2)
        throw InputError("csv: c < 2 — only one distinct label (\"" + ds.label_names[0] +
                         "\") in " + path);
    validate(ds);
    return ds;
}

LabeledDataset load_idx(const std::string& images_path, const std::string& labels_path) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw InputError("cannot open file: " + images_path);
    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw InputError("cannot open file: " + labels_path);

    const std::uint32_t img_magic = read_be_u32(img, images_path);
    // 0x0000'08'0d: byte 2 = 0x08 (unsigned byte payload), byte 3 = #dims.
    const std::uint32_t dims = img_magic & 0xFFu;
    if ((img_magic & 0xFFFFFF00u) != 0x00000800u || dims < 2 || dims > 4) {
        std::ostringstream msg;
        msg << "idx: unsupported image magic 0x" << std::hex << img_magic << " in "
            << images_path << " (expected 0x00000802..0x00000804)";
        throw InputError(msg.str());
    }
    const std::uint32_t lab_magic = read_be_u32(lab, labels_path);
    if (lab_magic != 0x00000801u) {
        std::ostringstream msg;
        msg << "idx: unsupported label magic 0x" << std::hex << lab_magic << " in "
            << labels_path << " (expected 0x00000801)";
        throw InputError(msg.str());
    }

    const std::uint32_t count = read_be_u32(img, images_path);
    std::size_t n = 1;
    for (std::uint32_t d = 1; d < dims; ++d) n *= read_be_u32(img, images_path);
    const std::uint32_t label_count = read_be_u32(lab, labels_path);
    if (count != label_count)
        throw InputError("idx: image count " + std::to_string(count) + " != label count " +
                         std::to_string(label_count));

    LabeledDataset ds;
    ds.m = count;
    ds.n = n;
    ds.data.resize(ds.m * ds.n);
    std::vector<unsigned char> pixel_row(n);
    for (std::size_t i = 0; i < ds.m; ++i) {
        if (!img.read(reinterpret_cast<char*>(pixel_row.data()),
                      static_cast<std::streamsize>(n)))
            throw InputError("idx: truncated image data in " + images_path);
        double* out = ds.data.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<double>(pixel_row[j]);
    }

    std::vector<unsigned char> raw_labels(ds.m);
    if (!lab.read(reinterpret_cast<char*>(raw_labels.data()),
                  static_cast<std::streamsize>(ds.m)))
        throw InputError("idx: truncated label data in " + labels_path);

    LabelRemap remap;
    ds.labels.reserve(ds.m);
    for (unsigned char y : raw_labels)
        ds.labels.push_back(remap.id_for(std::to_string(static_cast<int>(y))));
    ds.c = static_cast<int>(remap.names.size());
    ds.label_names = std::move(remap.names);
    if (ds.c < 2) throw InputError("idx: c < 2 — only one distinct label");
    validate(ds);
    return ds;
}

LabeledDataset load_raw(const std::string& data_path) {
    std::ifstream side(data_path + ".json");
    if (!side) throw InputError("cannot open sidecar: " + data_path + ".json");
    nlohmann::json meta;
    try {
        side >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("raw: bad sidecar JSON: " + std::string(e.what()));
    }
    for (const char* key : {"m", "n", "c", "labels_path"})
        if (!meta.contains(key))
            throw InputError(std::string("raw: sidecar missing field \"") + key + "\"");

    LabeledDataset ds;
    ds.m = meta["m"].get<std::size_t>();
    ds.n = meta["n"].get<std::size_t>();
    ds.c = meta["c"].get<int>();
    if (meta.contains("label_names"))
        ds.label_names = meta["label_names"].get<std::vector<std::string>>();
    if (ds.label_names.empty())
        for (int i = 0; i < ds.c; ++i) ds.label_names.push_back(std::to_string(i));

    std::ifstream in(data_path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + data_path);
    ds.data.resize(ds.m * ds.n);
    if (!in.read(reinterpret_cast<char*>(ds.data.data()),
                 static_cast<std::streamsize>(ds.data.size() * sizeof(double))))
        throw InputError("raw: truncated data file: " + data_path);

    const std::string labels_path = meta["labels_path"].get<std::string>();
    std::ifstream labin(labels_path, std::ios::binary);
    if (!labin) throw InputError("cannot open file: " + labels_path);
    std::vector<std::int32_t> raw(ds.m);
    if (!labin.read(reinterpret_cast<char*>(raw.data()),
                    static_cast<std::streamsize>(raw.size() * sizeof(std::int32_t))))
        throw InputError("raw: truncated labels file: " + labels_path);
    ds.labels.assign(raw.begin(), raw.end());
    validate(ds);
    return ds;
}

void write_csv(const LabeledDataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    for (std::size_t j = 0; j < ds.n; ++j) out << "feature_" << j << ",";
    out << "label\n";
    char buf[64];
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto r = ds.row(i);
        for (std::size_t j = 0; j < ds.n; ++j) {
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), r[j]);
            out.write(buf, ptr - buf);
            out.put(',');
        }
        const std::string& name = ds.label_names[static_cast<std::size_t>(ds.labels[i])];
        if (name.find_first_of(",\"\n\r") != std::string::npos) {
            out.put('"');
            for (char ch : name) {
                if (ch == '"') out.put('"');
                out.put(ch);
            }
            out.put('"');
        } else {
            out << name;
        }
        out.put('\n');
    }
    if (!out) throw InputError("write failed: " + path);
}

void write_raw(const LabeledDataset& ds, const std::string& data_path) {
    const std::string labels_path = data_path + ".labels";
    {
        std::ofstream out(data_path, std::ios::binary);
        if (!out) throw InputError("cannot write file: " + data_path);
        out.write(reinterpret_cast<const char*>(ds.data.data()),
                  static_cast<std::streamsize>(ds.data.size() * sizeof(double)));
        if (!out) throw InputError("write failed: " + data_path);
    }
    {
        std::ofstream out(labels_path, std::ios::binary);
        if (!out) throw InputError("cannot write file: " + labels_path);
        std::vector<std::int32_t> raw(ds.labels.begin(), ds.labels.end());
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size() * sizeof(std::int32_t)));
        if (!out) throw InputError("write failed: " + labels_path);
    }
    nlohmann::ordered_json meta;
    meta["m"] = ds.m;
    meta["n"] = ds.n;
    meta["c"] = ds.c;
    meta["labels_path"] = labels_path;
    meta["label_names"] = ds.label_names;
    std::ofstream side(data_path + ".json");
    if (!side) throw InputError("cannot write sidecar: " + data_path + ".json");
    side << meta.dump(2) << "\n";
}

ClassPartition partition(const LabeledDataset& ds) {
    ClassPartition part;
    const auto c = static_cast<std::size_t>(ds.c);
    part.per_class_rows.resize(c);
    part.counts.assign(c, 0);
    part.class_means.assign(c, std::vector<double>(ds.n, 0.0));
    part.global_mean.assign(ds.n, 0.0);

    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto y = static_cast<std::size_t>(ds.labels[i]);
        part.per_class_rows[y].push_back(i);
        ++part.counts[y];
        const auto r = ds.row(i);
        double* cm = part.class_means[y].data();
        double* gm = part.global_mean.data();
        for (std::size_t j = 0; j < ds.n; ++j) {
            cm[j] += r[j];
            gm[j] += r[j];
        }
    }
    for (std::size_t i = 0; i < c; ++i) {
        const double inv = 1.0 / static_cast<double>(part.counts[i]);
        for (double& v : part.class_means[i]) v *= inv;
    }
    const double inv_m = 1.0 / static_cast<double>(ds.m);
    for (double& v : part.global_mean) v *= inv_m;
    return part;
}

LabeledDataset stratified_bootstrap(const LabeledDataset& ds, double ratio, rng::Stream& stream) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::invalid_argument("stratified_bootstrap: ratio must be in (0, 1]");

    const auto c = static_cast<std::size_t>(ds.c);
    std::vector<std::vector<std::size_t>> rows_by_class(c);
    for (std::size_t i = 0; i < ds.m; ++i)
        rows_by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);

    LabeledDataset out;
    out.n = ds.n;
    out.c = ds.c;
    out.label_names = ds.label_names;
    for (std::size_t cls = 0; cls < c; ++cls) {
        const auto& rows = rows_by_class[cls];
        const auto take = static_cast<std::size_t>(std::max<long>(
            1, std::lround(ratio * static_cast<double>(rows.size()))));
        for (std::size_t k = 0; k < take; ++k) {
            const std::size_t src = rows[stream.below(rows.size())];
            const auto r = ds.row(src);
            out.data.insert(out.data.end(), r.begin(), r.end());
            out.labels.push_back(static_cast<int>(cls));
        }
    }
    out.m = out.labels.size();
    return out;
}

LabeledDataset standardize(const LabeledDataset& ds) {
    LabeledDataset out = ds;
    if (ds.m == 0 || ds.n == 0) return out;

    std::vector<double> mean(ds.n, 0.0);
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto r = ds.row(i);
        for (std::size_t j = 0; j < ds.n; ++j) mean[j] += r[j];
    }
    const double inv_m = 1.0 / static_cast<double>(ds.m);
    for (double& v : mean) v *= inv_m;

    std::vector<double> sq(ds.n, 0.0);
    for (std::size_t i = 0; i < ds.m; ++i) {
        const auto r = ds.row(i);
        for (std::size_t j = 0; j < ds.n; ++j) {
            const double d = r[j] - mean[j];
            sq[j] += d * d;
        }
    }
    std::vector<double> inv_std(ds.n);
    for (std::size_t j = 0; j < ds.n; ++j) {
        const double sd = std::sqrt(sq[j] * inv_m);  // population deviation
        inv_std[j] = sd > 0.0 ? 1.0 / sd : 1.0;
    }

    for (std::size_t i = 0; i < ds.m; ++i) {
        auto r = out.row(i);
        for (std::size_t j = 0; j < ds.n; ++j) r[j] = (r[j] - mean[j]) * inv_std[j];
    }
    return out;
}

}  // namespace dqm
