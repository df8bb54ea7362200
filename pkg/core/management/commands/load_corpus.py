from django.core.management.base import BaseCommand, CommandError

from api.knotfile import serialize_knot
from core import corpus
from core.exceptions import LegchError
from core.models import Knot


class Command(BaseCommand):
    help = 'Загружает поставляемые примеры узлов (unknot, trefoil, trefoil_rii, island) в базу данных'

    def add_arguments(self, parser):
        parser.add_argument('names', nargs='*', help='Какие узлы загрузить (по умолчанию все)')

    def handle(self, *args, **options):
        names = options['names'] or corpus.CORPUS_NAMES

        self.stdout.write('Загружаю корпус...')
        for name in names:
            if name not in corpus.CORPUS_NAMES:
                raise CommandError(f"В корпусе нет узла {name!r}")
            try:
                knot = corpus.load(name)
            except LegchError as exc:
                raise CommandError(f"{name}: {exc}")

            # Повторный запуск обновляет документ, а не плодит копии
            _, created = Knot.objects.update_or_create(
                name=name,
                defaults={
                    'description': knot.meta.get('description', ''),
                    'document': serialize_knot(knot),
                },
            )
            verb = 'Создан' if created else 'Обновлён'
            self.stdout.write(f'{verb} узел: {name}')

        self.stdout.write(self.style.SUCCESS('Корпус успешно загружен!'))
