import unittest
import time
import stereodepth
from stereodepth.exception import MultipleErrors


def small_int(rng):
    return int(rng.integers(0, 100))


class DecoratorTestCase(unittest.TestCase):
    def test_randomized(self):
        @stereodepth.randomized(5, a=small_int, b=small_int)
        def mock_test(count, option=1, a=None, b=None):
            count.append(1)
            self.assertEqual(option, 1)
            self.assertEqual(a + b, b + a)

        cnt = []
        mock_test(cnt)
        self.assertEqual(sum(cnt), 5)

    def test_randomized_is_reproducible(self):
        def record(draws):
            @stereodepth.randomized(4, seed=11, a=small_int, b=small_int)
            def mock_test(a, b):
                draws.append((a, b))
            mock_test()
            return draws

        self.assertEqual(record([]), record([]))

    def test_trials_differ(self):
        draws = []

        @stereodepth.randomized(20, a=small_int)
        def mock_test(a):
            draws.append(a)

        mock_test()
        self.assertGreater(len(set(draws)), 1)

    def test_randomized_errors(self):
        @stereodepth.randomized(10, a=small_int)
        def mock_test(a):
            if a >= 0:
                raise AssertionError('Error thrown in trial.')

        try:
            mock_test()
            raise AssertionError('No MultipleErrors caught.')
        except MultipleErrors as e:
            self.assertEqual(len(e), 10)
            self.assertIn('Error thrown in trial.', str(e))
            self.assertIn('Trial 9', str(e))

    def test_randomized_invalid_trials(self):
        with self.assertRaises(ValueError):
            stereodepth.randomized(0, a=small_int)
        with self.assertRaises(TypeError):
            stereodepth.randomized(1.5, a=small_int)

    def test_randomized_invalid_generator(self):
        with self.assertRaises(TypeError):
            stereodepth.randomized(3, a=[1, 2, 3])

    def test_multi_threads_randomized(self):
        @stereodepth.multi_threading_randomized(2, 6, a=small_int)
        def mock_test(count, a):
            count.append(a)

        cnt = []
        mock_test(cnt)
        self.assertEqual(len(cnt), 6)

    def test_multi_threads_same_draws(self):
        single, multi = [], []

        @stereodepth.randomized(8, seed=3, a=small_int)
        def mock_single(a):
            single.append(a)

        @stereodepth.multi_threading_randomized(4, 8, seed=3, a=small_int)
        def mock_multi(a):
            multi.append(a)

        mock_single()
        mock_multi()
        self.assertEqual(sorted(single), sorted(multi))

    def test_multi_threads_randomized_time(self):
        @stereodepth.multi_threading_randomized(10, 10)
        def mock_test():
            time.sleep(1)

        start = time.time()
        mock_test()
        self.assertLess(time.time() - start, 3)

    def test_multi_threads_randomized_invalid_threads(self):
        with self.assertRaises(ValueError):
            stereodepth.multi_threading_randomized(0, 10)
        with self.assertRaises(ValueError):
            stereodepth.multi_threading_randomized(-1, 10)
        with self.assertRaises(TypeError):
            stereodepth.multi_threading_randomized('2', 10)


if __name__ == '__main__':
    unittest.main(verbosity=2)
