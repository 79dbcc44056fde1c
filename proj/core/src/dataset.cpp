#include "densecount/dataset.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "densecount/errors.hpp"
#include "text_util.hpp"

namespace densecount {

using detail::parse_double;
using detail::parse_int;
using detail::trim;

const ImageRecord* DatasetManifest::find(std::string_view image_id) const {
  for (const auto& record : records) {
    if (record.image_id == image_id) return &record;
  }
  return nullptr;
}

namespace {

void check_identifier(std::string_view id, std::string_view source, std::size_t line) {
  if (id.empty()) throw ParseError(std::string(source), line, "image_id", "empty image id");
  if (id.find_first_of("/\\") != std::string_view::npos || id == "." || id == "..") {
    throw ParseError(std::string(source), line, "image_id",
                     fmt::format("'{}' is not usable as a file name", id));
  }
}

}  // namespace

std::vector<AnnotatedImage> parse_annotations(std::string_view text, std::string_view source) {
  std::vector<AnnotatedImage> images;
  std::set<std::string, std::less<>> seen;
  bool in_record = false;
  const auto all_lines = detail::lines(text);
  for (std::size_t i = 0; i < all_lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = all_lines[i];
    const std::string_view stripped = trim(line);
    if (!stripped.empty() && stripped.front() == '#') continue;
    if (stripped.empty()) {
      in_record = false;
      continue;
    }
    const auto fields = detail::split(stripped, '\t');
    if (!in_record) {
      if (fields.size() < 3 || fields.size() > 4) {
        throw ParseError(std::string(source), lineno, "header",
                         "expected image_id<TAB>width<TAB>height[<TAB>variety]");
      }
      AnnotatedImage image;
      image.annotations.image_id = std::string(trim(fields[0]));
      check_identifier(image.annotations.image_id, source, lineno);
      if (!seen.insert(image.annotations.image_id).second) {
        throw ParseError(std::string(source), lineno, "image_id",
                         fmt::format("duplicate image id '{}'", image.annotations.image_id));
      }
      image.annotations.width = parse_int<int>(fields[1], source, lineno, "width");
      image.annotations.height = parse_int<int>(fields[2], source, lineno, "height");
      if (image.annotations.width <= 0 || image.annotations.height <= 0) {
        throw ParseError(std::string(source), lineno, "size", "width and height must be positive");
      }
      if (fields.size() == 4) image.variety = std::string(trim(fields[3]));
      images.push_back(std::move(image));
      in_record = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(std::string(source), lineno, "point", "expected x<TAB>y");
    }
    images.back().annotations.points.push_back(
        {parse_double(fields[0], source, lineno, "x"), parse_double(fields[1], source, lineno, "y")});
  }

  std::vector<std::string> offenders;
  for (const auto& image : images) {
    try {
      image.annotations.validate();
    } catch (const ValidationError& e) {
      offenders.insert(offenders.end(), e.offenders().begin(), e.offenders().end());
    }
  }
  if (!offenders.empty()) {
    throw ValidationError(fmt::format("{}: annotations outside their image", source),
                          std::move(offenders));
  }
  return images;
}

std::vector<AnnotatedImage> load_annotations(const std::filesystem::path& path) {
  return parse_annotations(detail::read_text(path), path.string());
}

std::string format_annotations(const std::vector<AnnotatedImage>& images) {
  std::string out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& a = images[i].annotations;
    if (i > 0) out += '\n';
    out += fmt::format("{}\t{}\t{}", a.image_id, a.width, a.height);
    if (!images[i].variety.empty()) out += fmt::format("\t{}", images[i].variety);
    out += '\n';
    for (const auto& p : a.points) {
      out += fmt::format("{}\t{}\n", detail::exact(p.x), detail::exact(p.y));
    }
  }
  return out;
}

DatasetManifest parse_manifest(std::string_view text, std::string_view source,
                               const std::filesystem::path& base_dir) {
  DatasetManifest manifest;
  const std::string src(source);
  bool have_seed = false;
  bool have_folds = false;
  bool in_records = false;
  std::optional<bool> rows_have_fold;
  std::set<std::string, std::less<>> seen;

  const auto all_lines = detail::lines(text);
  for (std::size_t i = 0; i < all_lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = trim(all_lines[i]);
    if (line.empty() || line.front() == '#') continue;

    if (!in_records) {
      if (line == "[records]") {
        in_records = true;
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError(src, lineno, "header", "expected 'key = value' or '[records]'");
      }
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (key == "name") {
        manifest.name = std::string(value);
      } else if (key == "seed") {
        manifest.seed = parse_int<std::uint64_t>(value, src, lineno, "seed");
        have_seed = true;
      } else if (key == "fold_count") {
        manifest.fold_count = parse_int<int>(value, src, lineno, "fold_count");
        if (manifest.fold_count < 0) {
          throw ParseError(src, lineno, "fold_count", "must be >= 0");
        }
        have_folds = true;
      } else if (key == "annotations") {
        manifest.annotations_path = std::string(value);
      } else {
        throw ParseError(src, lineno, std::string(key), "unknown manifest key");
      }
      continue;
    }

    const auto fields = detail::split(line, '\t');
    if (fields.size() != 6 && fields.size() != 7) {
      throw ParseError(src, lineno, "record",
                       fmt::format("expected 6 or 7 tab-separated fields, got {}", fields.size()));
    }
    const bool has_fold = fields.size() == 7;
    if (rows_have_fold && *rows_have_fold != has_fold) {
      throw ParseError(src, lineno, "fold", "fold column must be present on all rows or none");
    }
    rows_have_fold = has_fold;

    ImageRecord record;
    record.image_id = std::string(trim(fields[0]));
    check_identifier(record.image_id, src, lineno);
    if (!seen.insert(record.image_id).second) {
      throw ParseError(src, lineno, "image_id",
                       fmt::format("duplicate image id '{}'", record.image_id));
    }
    record.file_path = std::string(trim(fields[1]));
    record.variety = std::string(trim(fields[2]));
    record.width = parse_int<int>(fields[3], src, lineno, "width");
    record.height = parse_int<int>(fields[4], src, lineno, "height");
    record.annotation_count = parse_int<std::int64_t>(fields[5], src, lineno, "annotation_count");
    if (record.width <= 0 || record.height <= 0) {
      throw ParseError(src, lineno, "size", "width and height must be positive");
    }
    if (record.annotation_count < 0) {
      throw ParseError(src, lineno, "annotation_count", "must be >= 0");
    }
    if (has_fold) {
      const int fold = parse_int<int>(fields[6], src, lineno, "fold");
      if (fold < 0 || fold >= manifest.fold_count) {
        throw ParseError(src, lineno, "fold",
                         fmt::format("fold {} outside [0, {})", fold, manifest.fold_count));
      }
      manifest.fold_assignment[record.image_id] = fold;
    }
    manifest.records.push_back(std::move(record));
  }

  if (!have_seed) throw ParseError(src, 0, "seed", "manifest must declare 'seed'");
  if (!have_folds) throw ParseError(src, 0, "fold_count", "manifest must declare 'fold_count'");

  if (!manifest.fold_assignment.empty()) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(manifest.fold_count), 0);
    for (const auto& [id, fold] : manifest.fold_assignment) ++sizes[static_cast<std::size_t>(fold)];
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    if (*hi - *lo > 1) {
      throw ValidationError(fmt::format("{}: fold sizes unbalanced ({} vs {})", src, *lo, *hi), {});
    }
  }

  if (!manifest.annotations_path.empty()) {
    std::filesystem::path ann_path(manifest.annotations_path);
    if (ann_path.is_relative()) ann_path = base_dir / ann_path;
    std::vector<std::string> offenders;
    std::vector<AnnotatedImage> images;
    try {
      images = load_annotations(ann_path);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}: annotation file '{}' is inconsistent", src,
                                        ann_path.string()),
                            e.offenders());
    }
    for (auto& image : images) {
      manifest.annotations.emplace(image.annotations.image_id, std::move(image.annotations));
    }
    for (const auto& record : manifest.records) {
      const auto it = manifest.annotations.find(record.image_id);
      if (it == manifest.annotations.end()) {
        offenders.push_back(fmt::format("{}: no annotations", record.image_id));
        continue;
      }
      const auto& ann = it->second;
      if (ann.width != record.width || ann.height != record.height) {
        offenders.push_back(fmt::format("{}: annotated as {}x{}, record says {}x{}",
                                        record.image_id, ann.width, ann.height, record.width,
                                        record.height));
      }
      if (static_cast<std::int64_t>(ann.points.size()) != record.annotation_count) {
        offenders.push_back(fmt::format("{}: {} points, record says {}", record.image_id,
                                        ann.points.size(), record.annotation_count));
      }
    }
    if (!offenders.empty()) {
      throw ValidationError(fmt::format("{}: records disagree with annotations", src),
                            std::move(offenders));
    }
  }
  return manifest;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(detail::read_text(path), path.string(), path.parent_path());
}

std::string format_manifest(const DatasetManifest& manifest) {
  std::string out = "# densecount dataset manifest\n";
  out += fmt::format("name = {}\nseed = {}\nfold_count = {}\n", manifest.name, manifest.seed,
                     manifest.fold_count);
  if (!manifest.annotations_path.empty()) {
    out += fmt::format("annotations = {}\n", manifest.annotations_path);
  }
  out += "[records]\n";
  const bool folds = !manifest.fold_assignment.empty();
  for (const auto& r : manifest.records) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}", r.image_id, r.file_path, r.variety, r.width,
                       r.height, r.annotation_count);
    if (folds) out += fmt::format("\t{}", manifest.fold_assignment.at(r.image_id));
    out += '\n';
  }
  return out;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  detail::write_text(path, format_manifest(manifest));
}

namespace {

void accumulate(CountStats& s, std::int64_t count) {
  if (s.images == 0) {
    s.min = s.max = count;
  } else {
    s.min = std::min(s.min, count);
    s.max = std::max(s.max, count);
  }
  ++s.images;
  s.total += count;
}

void finish(CountStats& s) {
  s.mean = s.images == 0 ? 0.0 : static_cast<double>(s.total) / static_cast<double>(s.images);
}

}  // namespace

DatasetStats dataset_stats(const DatasetManifest& manifest) {
  DatasetStats stats;
  for (const auto& record : manifest.records) {
    accumulate(stats.by_variety[record.variety], record.annotation_count);
    accumulate(stats.total, record.annotation_count);
  }
  for (auto& [variety, s] : stats.by_variety) finish(s);
  finish(stats.total);
  return stats;
}

std::string format_stats(const DatasetStats& stats) {
  std::size_t width = 7;
  for (const auto& [variety, s] : stats.by_variety) width = std::max(width, variety.size());
  auto row = [&](std::string_view label, const CountStats& s) {
    return fmt::format("{:<{}}  {:>6}  {:>6}  {:>6}  {:>9.2f}  {:>7}\n", label, width, s.images,
                       s.min, s.max, s.mean, s.total);
  };
  std::string out = fmt::format("{:<{}}  {:>6}  {:>6}  {:>6}  {:>9}  {:>7}\n", "Variety", width,
                                "Images", "Min", "Max", "Mean", "Total");
  for (const auto& [variety, s] : stats.by_variety) {
    out += row(variety.empty() ? "(none)" : variety, s);
  }
  out += row("Total", stats.total);
  return out;
}

}  // namespace densecount
