#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "faceid/embeddings.hpp"
#include "faceid/error.hpp"

using namespace faceid;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "faceid_embed_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

LabeledFeature rec(std::string subject, std::string image, Condition cond,
                   std::vector<double> values,
                   DescriptorId id = DescriptorId::kEmbedding) {
  return {std::move(subject), std::move(image), cond, {id, std::move(values)}};
}

}  // namespace

TEST_CASE("model registry matches the six evaluated CNNs") {
  const auto& registry = model_registry();
  REQUIRE(registry.size() == 6);
  CHECK(registry[0].name == "ResNet-50");
  CHECK(registry[0].params_millions == 23.5);
  CHECK(registry[1].name == "VGG-16");
  CHECK(registry[1].params_millions == 138.0);
  CHECK(registry[2].name == "MobileNetV2");
  CHECK(registry[2].params_millions == 3.4);
  CHECK(registry[3].name == "EfficientNet-B0");
  CHECK(registry[3].params_millions == 5.3);
  CHECK(registry[4].name == "LightCNN-29");
  CHECK(registry[4].params_millions == 12.6);
  CHECK(registry[5].name == "LightCNN-9");
  CHECK(registry[5].params_millions == 5.5);
}

TEST_CASE("embeddings: write then load round-trips canonically") {
  std::vector<LabeledFeature> records;
  records.push_back(rec("s2", "i1", Condition::kDay, {0.5, -1.25, 3e-17, 7}));
  records.push_back(rec("s1", "i9", Condition::kOffice,
                        {1.0 / 3.0, 2.0 / 7.0, -0.0, 123456.789}));
  records.push_back(rec("s1", "i2", Condition::kOther, {0, 1, 2, 3}));

  const fs::path path = temp_file("roundtrip.csv");
  write_embeddings(records, path);

  const auto loaded = load_embeddings(path, 4);
  REQUIRE(loaded.size() == 3);
  CHECK(loaded[0].subject_id == "s1");  // canonical sorted order
  CHECK(loaded[0].image_id == "i2");
  CHECK(loaded[1].image_id == "i9");
  CHECK(loaded[2].subject_id == "s2");
  for (const auto& f : loaded) CHECK(f.feature.id == DescriptorId::kEmbedding);
  CHECK(loaded[2].feature.values == records[0].feature.values);

  // Writing the loaded set reproduces the file byte for byte.
  const fs::path again = temp_file("roundtrip2.csv");
  write_embeddings(loaded, again);
  CHECK(read_text(path) == read_text(again));
}

TEST_CASE("embeddings: two valid records load") {
  const fs::path path = temp_file("ok.csv");
  write_text(path,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,3,1,2,3\n"
             "b,y,day,3,0.5,0.25,0.125\n");
  CHECK(load_embeddings(path, 3).size() == 2);
}

TEST_CASE("embeddings: dim mismatch cites the record line") {
  const fs::path path = temp_file("short.csv");
  write_text(path,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,4,1,2,3,4\n"
             "a,y,office,3,1,2,3\n");
  try {
    load_embeddings(path, 4);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }

  const fs::path lying = temp_file("lying.csv");
  write_text(lying,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,4,1,2,3\n");
  CHECK_THROWS_AS(load_embeddings(lying, 4), FormatError);
}

TEST_CASE("embeddings: duplicates and non-finite values are format errors") {
  const fs::path dup = temp_file("dup.csv");
  write_text(dup,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,2,1,2\n"
             "a,x,office,2,3,4\n");
  CHECK_THROWS_AS(load_embeddings(dup, 2), FormatError);

  const fs::path inf = temp_file("inf.csv");
  write_text(inf,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,2,inf,2\n");
  CHECK_THROWS_AS(load_embeddings(inf, 2), FormatError);

  const fs::path nan = temp_file("nan.csv");
  write_text(nan,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,2,nan,2\n");
  CHECK_THROWS_AS(load_embeddings(nan, 2), FormatError);
}

TEST_CASE("embeddings: unknown condition and bad header are format errors") {
  const fs::path cond = temp_file("cond.csv");
  write_text(cond,
             "subject_id,image_id,condition,dim\n"
             "a,x,dusk,2,1,2\n");
  CHECK_THROWS_AS(load_embeddings(cond, 2), FormatError);

  const fs::path header = temp_file("header.csv");
  write_text(header, "id,image,cond,dim\na,x,office,2,1,2\n");
  CHECK_THROWS_AS(load_embeddings(header, 2), FormatError);

  // The descriptor-column variant is not a valid embedding file.
  const fs::path features = temp_file("withdesc.csv");
  write_text(features,
             "subject_id,image_id,condition,descriptor_id,dim\n"
             "a,x,office,LBP,2,1,2\n");
  CHECK_THROWS_AS(load_embeddings(features, 2), FormatError);
  CHECK(load_features(features).size() == 1);
  CHECK(load_features(features)[0].feature.id == DescriptorId::kLbp);
}

TEST_CASE("feature files: descriptor column round-trips") {
  std::vector<LabeledFeature> records;
  records.push_back(
      rec("s1", "i1", Condition::kOffice, {0.25, 0.75}, DescriptorId::kLbp));
  records.push_back(
      rec("s1", "i2", Condition::kOffice, {0.5, 0.5}, DescriptorId::kLbp));
  const fs::path path = temp_file("features.csv");
  write_features(records, path, /*with_descriptor_column=*/true);
  const auto loaded = load_features(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].feature.id == DescriptorId::kLbp);
  CHECK(loaded[0].feature.values == std::vector<double>{0.25, 0.75});
}

TEST_CASE("feature files: negative histogram values are rejected") {
  const fs::path path = temp_file("neg.csv");
  write_text(path,
             "subject_id,image_id,condition,descriptor_id,dim\n"
             "a,x,office,LPQ,2,-0.5,1.5\n");
  CHECK_THROWS_AS(load_features(path), FormatError);
  // Embeddings may be negative.
  const fs::path emb = temp_file("negemb.csv");
  write_text(emb,
             "subject_id,image_id,condition,dim\n"
             "a,x,office,2,-0.5,1.5\n");
  CHECK(load_embeddings(emb, 2).size() == 1);
}

TEST_CASE("feature files: ids with separators are rejected on write") {
  std::vector<LabeledFeature> bad;
  bad.push_back(rec("s,1", "i1", Condition::kOffice, {1.0}));
  CHECK_THROWS_AS(format_features(bad, false), FormatError);
}
