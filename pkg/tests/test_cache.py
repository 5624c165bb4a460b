import json
import os
import shutil
import tempfile
import unittest

from spherical_kit.cache import FileCache, cache_key, open_cache


class TestFileCache(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_put_and_get(self):
        cache = FileCache(self.temp_dir)
        key = cache_key({"cmd": "spherical", "n": 1, "m": 2})
        self.assertIsNone(cache.get(key))
        cache.put(key, {"eigenvalue": "6"})
        self.assertEqual(cache.get(key), {"eigenvalue": "6"})

    def test_key_ignores_dict_order(self):
        self.assertEqual(cache_key({"a": 1, "b": 2}), cache_key({"b": 2, "a": 1}))
        self.assertNotEqual(cache_key({"a": 1}), cache_key({"a": 2}))

    def test_tampered_entry_is_ignored(self):
        cache = FileCache(self.temp_dir)
        key = cache_key({"cmd": "zonal"})
        cache.put(key, {"value": 1})
        path = os.path.join(self.temp_dir, f"{key}.json")
        with open(path) as f:
            record = json.load(f)
        record["payload"]["value"] = 2
        with open(path, "w") as f:
            json.dump(record, f)
        self.assertIsNone(cache.get(key))

    def test_unreadable_entry_is_ignored(self):
        cache = FileCache(self.temp_dir)
        with open(os.path.join(self.temp_dir, "broken.json"), "w") as f:
            f.write("{not json")
        self.assertIsNone(cache.get("broken"))

    def test_open_cache_with_directory_uses_files(self):
        self.assertIsInstance(open_cache(self.temp_dir), FileCache)


if __name__ == "__main__":
    unittest.main()
